#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

TEST_CASE("q-integers and q-factorials") {
    mpz_class f = 1;
    for (std::uint64_t n = 0; n <= 12; ++n) {
        if (n) f *= n;
        CHECK(q_int(n, Padic::one(5)).agrees_with(Padic::from_integer(5, n)));
        CHECK(q_factorial(n, Padic::one(5)).agrees_with(Padic::from_integer(5, f)));
    }
    CHECK(q_int(3, Z(3, 2)).agrees_with(Z(3, 7)));
    // [3]_4 = 1 + 4 + 16 = 21 = 3 * 7
    Padic t = q_int(3, Z(3, 4));
    CHECK(t.agrees_with(Z(3, 21)));
    CHECK(t.valuation() == 1);
    CHECK(q_factorial(0, Z(3, 4)).agrees_with(Padic::one(3)));
}

TEST_CASE("v_p of [n]_q! is the sum of the v_p([k]_q) and matches Legendre for q = 1 + p") {
    const unsigned p = 3;
    Padic q = Z(p, 4);
    std::int64_t sum = 0;
    for (std::uint64_t n = 1; n <= 200; ++n) {
        sum += q_int(n, q).valuation();
        if (n % 25 == 0) {
            CHECK(q_factorial(n, q).valuation() == sum);
            CHECK(sum == vp_factorial(n, p));
        }
    }
    double ratio = static_cast<double>(sum) / 200.0;
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("omega_q over Q_p") {
    for (unsigned p : {3u, 5u, 7u}) {
        auto c1 = make_qcontext(Padic::one(p), Padic::zero(p));
        CHECK(c1.kappa == 1);
        CHECK(omega_q(c1) == LogRadius::exponent(1, long(p) - 1));
        Padic q = Padic::one(p) + Padic::p_power(p, 2);
        auto c2 = make_qcontext(q, Z(p, long(p)));
        CHECK(c2.kappa == 1);
        CHECK(omega_q(c2) == LogRadius::omega(p));
    }
    // kappa >= 2 only arises over extensions: ([kappa]_q omega)^{1/kappa}
    CHECK(omega_q_formula(3, 2, 1) == LogRadius::exponent(3, 4));
    CHECK(omega_q_formula(5, 1, 0) == LogRadius::exponent(1, 4));
}

TEST_CASE("omega equals the limiting slope of 1/n!") {
    for (unsigned p : {3u, 5u}) {
        Series e = series_exp(Series(p, {Padic::zero(p), Padic::one(p)}, 150), 300);
        CHECK(radius_estimate(e).contains(omega_q(make_qcontext(Padic::one(p), Padic::zero(p)))));
    }
}

TEST_CASE("roots of unity") {
    CHECK(is_root_of_unity(Padic::one(3)));
    CHECK_FALSE(is_root_of_unity(Z(3, 4)));
    CHECK_FALSE(is_root_of_unity(Z(5, 26)));
}

TEST_CASE("twisted powers") {
    const unsigned p = 5;
    Padic h = Z(p, 10);
    DifferenceOperator s1(Padic::one(p), h);
    CHECK(twisted_power(0, Padic::zero(p), s1).agrees_with(poly(p, {1})));
    CHECK(twisted_power(2, Padic::zero(p), s1).agrees_with(poly(p, {0, -10, 1})));
    DifferenceOperator s0(Z(p, 6), Padic::zero(p));
    CHECK(twisted_power(4, Padic::zero(p), s0).agrees_with(poly(p, {0, 0, 0, 0, 1})));

    std::mt19937_64 g(23);
    for (int i = 0; i < 25; ++i) {
        DifferenceOperator s(Padic::one(p) + Z(p, rnd(g, 0, 30)).shifted(1), Z(p, rnd(g, 1, 30)));
        Padic c = Z(p, rnd(g, -10, 10));
        auto n = static_cast<std::uint64_t>(rnd(g, 1, 20));
        Series tp = twisted_power(n, c, s, kInf, Padic::zero(p));
        Series lower = twisted_power(n - 1, c, s, kInf, Padic::zero(p));
        CHECK((twisted_derivative(tp, s) - lower * q_int(n, s.q())).is_exact_zero());
    }
}
