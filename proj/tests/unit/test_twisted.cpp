#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

TEST_CASE("with c = 0 and h = 0 the twisted basis is the monomial basis") {
    DifferenceOperator s(Z(3, 4), Padic::zero(3));
    auto a = to_twisted_basis(poly(3, {5, -2, 7, 1}), s);
    REQUIRE(a.size() == 4);
    CHECK(a[0].agrees_with(Z(3, 5)));
    CHECK(a[1].agrees_with(Z(3, -2)));
    CHECK(a[2].agrees_with(Z(3, 7)));
    CHECK(a[3].agrees_with(Z(3, 1)));
}

TEST_CASE("T^2 = T(T-h) + hT for sigma_{1,h}") {
    Padic h = Z(5, 15);
    DifferenceOperator s(Padic::one(5), h);
    auto a = to_twisted_basis(poly(5, {0, 0, 1}), s);
    REQUIRE(a.size() == 3);
    CHECK(a[0].is_zero());
    CHECK(a[1].agrees_with(h));
    CHECK(a[2].agrees_with(Padic::one(5)));
}

TEST_CASE("hand twisted derivatives") {
    const unsigned p = 3;
    Padic h = Z(p, 6);
    DifferenceOperator sh(Padic::one(p), h);
    CHECK(twisted_derivative(poly(p, {0, 0, 1}), sh).agrees_with(Series::polynomial(p, {h, Z(p, 2)})));
    DifferenceOperator sq(Z(p, 4), Padic::zero(p));
    for (std::uint64_t n = 1; n <= 8; ++n) {
        std::vector<long> c(n + 1, 0);
        c[n] = 1;
        Series d = twisted_derivative(poly(p, c), sq);
        std::vector<Padic> want(n, Padic::zero(p));
        want[n - 1] = q_int(n, Z(p, 4));
        CHECK(d.agrees_with(Series::polynomial(p, want)));
    }
    CHECK(twisted_derivative(poly(p, {9}), sq).is_zero());
    DifferenceOperator id(Padic::one(p), Padic::zero(p));
    CHECK(code_of([&] { twisted_derivative(poly(p, {0, 1}), id); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("twisted Leibniz rule and basis round trip on random polynomials") {
    std::mt19937_64 g(17);
    for (int i = 0; i < 40; ++i) {
        unsigned p = i % 3 == 0 ? 7 : 3;
        DifferenceOperator s(Padic::one(p) + Z(p, rnd(g, 1, 20)).shifted(1), Z(p, rnd(g, -20, 20)));
        Series f = rand_poly(g, p, static_cast<int>(rnd(g, 0, 15)), 100);
        Series h = rand_poly(g, p, static_cast<int>(rnd(g, 0, 15)), 100);
        Series lhs = twisted_derivative(f * h, s);
        Series rhs = compose_affine(f, s) * twisted_derivative(h, s) + twisted_derivative(f, s) * h;
        CHECK((lhs - rhs).is_exact_zero());
        CHECK((from_twisted_basis(to_twisted_basis(f, s), s, f.center()) - f).is_exact_zero());
    }
}

TEST_CASE("twisted coefficients have the same Gauss norm above |(q-1)c + h|") {
    std::mt19937_64 g(19);
    const unsigned p = 5;
    for (int i = 0; i < 30; ++i) {
        DifferenceOperator s(Padic::one(p) + Z(p, rnd(g, 1, 20)).shifted(1), Z(p, rnd(g, -20, 20)).shifted(2));
        Padic c = Z(p, rnd(g, -10, 10));
        Series f = rand_poly(g, p, 12, 1000).with_center(c);
        mpq_class vd = s.delta_at(c).is_zero() ? mpq_class(100) : mpq_class(s.delta_at(c).valuation());
        auto a = to_twisted_basis(f, s);
        for (const mpq_class& r : {mpq_class(-1), mpq_class(0), mpq_class(vd - mpq_class(1, 3))}) {
            if (r >= vd) continue;
            LogRadius tw = LogRadius::zero_radius();
            for (std::size_t n = 0; n < a.size(); ++n)
                if (!a[n].is_zero()) tw = max_radius(tw, LogRadius(a[n].valuation() + r * long(n)));
            CHECK(tw == gauss_norm(f, LogRadius(r)));
        }
    }
}

TEST_CASE("d_{q,0} tends to d/dT as q -> 1") {
    const unsigned p = 3;
    Series f = poly(p, {4, -7, 2, 11, 5});
    Series df = f.derivative();
    std::int64_t prev = -1;
    for (int k = 1; k <= 6; ++k) {
        DifferenceOperator s(Padic::one(p) + Padic::p_power(p, k), Padic::zero(p));
        Series diff = twisted_derivative(f, s) - df;
        std::int64_t v = kInf;
        for (const auto& c : diff.coeffs())
            if (!c.is_zero()) v = std::min(v, c.valuation());
        CHECK(v >= k);
        CHECK(v > prev);
        prev = v;
    }
}
