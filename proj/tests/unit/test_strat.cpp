#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

namespace {

DiffSystem scalar_system(const Series& g, const Region& reg) { return {SeriesMatrix::scalar(g), reg}; }

}  // namespace

TEST_CASE("stratification of G = 1, G = 0 and a generic g") {
    const unsigned p = 3;
    Region line = Region::line(p);
    auto s1 = strat_sequence(scalar_system(poly(p, {1}), line), 10);
    for (const auto& Gn : s1) CHECK(Gn.at(0, 0).agrees_with(poly(p, {1})));
    auto s0 = strat_sequence(scalar_system(poly(p, {0}), line), 10);
    for (std::size_t n = 1; n < s0.size(); ++n) CHECK(s0[n].is_zero());
    Series g = poly(p, {2, -1, 4});
    auto sg = strat_sequence(scalar_system(g, line), 3);
    CHECK(sg[2].at(0, 0).agrees_with(g.derivative() + g * g));
}

TEST_CASE("recursion and binomial route agree on random rank-2 systems") {
    std::mt19937_64 g(29);
    for (int t = 0; t < 8; ++t) {
        const unsigned p = 5;
        SeriesMatrix G = SeriesMatrix::zero(2, p);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k) G.at(i, k) = rand_poly(g, p, 3, 20);
        DiffSystem sys{G, Region::line(p)};
        auto a = strat_sequence(sys, 8), b = strat_sequence_binomial(sys, 8);
        REQUIRE(a.size() == b.size());
        for (std::size_t n = 0; n < a.size(); ++n) CHECK((a[n] - b[n]).is_zero());
    }
}

TEST_CASE("norm bound on G_n") {
    const unsigned p = 3;
    Series g = poly(p, {3, 1, 9});
    auto s = strat_sequence(scalar_system(g, Region::line(p)), 12);
    for (const mpq_class& r : {mpq_class(0), mpq_class(1, 2), mpq_class(2)}) {
        LogRadius rho(r);
        // ||G_n|| <= max(||d/dT||, ||G||)^n with ||d/dT|| = 1/rho, i.e. exponent -r
        mpq_class base = std::min(mpq_class(-r), gauss_norm(g, rho).exp());
        for (std::size_t n = 1; n < s.size(); ++n)
            CHECK(gauss_norm(s[n].at(0, 0), rho).exp() >= base * long(n));
    }
}

TEST_CASE("deformations with closed forms") {
    const unsigned p = 3;
    const std::int64_t N = 30, M = 14;
    Region disc = Region::disc(Padic::zero(p), LogRadius::exponent(0));
    DiffSystem one = scalar_system(poly(p, {1}), disc);

    DifferenceOperator sq(Z(p, 10), Padic::zero(p));
    auto cert = certify_deformation(one, sq, {}, 40);
    REQUIRE(cert.verdict == Verdict::Compatible);
    CHECK(cert.inequality == "strict");
    SeriesMatrix A = deform(one, sq, M, N, cert);
    mpz_class pw = 1, f = 1;
    for (long n = 0; n <= M; ++n) {
        if (n) {
            pw *= 9;
            f *= n;
        }
        CHECK(A.at(0, 0).coeff(n).agrees_with(padic_from_rational(p, mpq_class(pw, f), N)));
    }

    // sigma_{1,h}, |h| < omega: A is the constant exp(h)
    Padic h = Z(p, 3);
    DifferenceOperator sh(Padic::one(p), h);
    auto ch = certify_deformation(one, sh, {}, 40);
    REQUIRE(ch.verdict == Verdict::Compatible);
    SeriesMatrix Ah = deform(one, sh, M, N, ch);
    mpq_class e = 0;
    mpz_class hp = 1;
    f = 1;
    for (long n = 0; n < 80; ++n) {
        if (n) {
            hp *= 3;
            f *= n;
        }
        e += mpq_class(hp, f);
    }
    CHECK(Ah.at(0, 0).coeff(0).agrees_with(padic_from_rational(p, e, N)));
    for (long n = 1; n <= M; ++n) CHECK(Ah.at(0, 0).coeff(n).is_zero());

    DiffSystem zero = scalar_system(poly(p, {0}), disc);
    SeriesMatrix Az = deform(zero, sq, M, N, certify_deformation(zero, sq, {}, 40));
    CHECK(Az.agrees_with(SeriesMatrix::identity(1, p)));
}

TEST_CASE("deform refuses an incompatible operator and names the radii") {
    const unsigned p = 3;
    DiffSystem one = scalar_system(poly(p, {1}), Region::line(p));
    DifferenceOperator big(Padic::one(p), Padic::one(p));
    auto cert = certify_deformation(one, big, {LogRadius::exponent(0), LogRadius::exponent(1)}, 40);
    CHECK(cert.verdict == Verdict::Incompatible);
    try {
        deform(one, big, 10, 20, cert);
        FAIL("expected a refusal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Incompatible);
        CHECK(std::string(e.what()).find("R_sigma") != std::string::npos);
    }
}

TEST_CASE("deformation along sigma^2 is the cocycle of the deformation along sigma") {
    const unsigned p = 5;
    Region disc = Region::disc(Padic::zero(p), LogRadius::exponent(0));
    DiffSystem sys = scalar_system(poly(p, {1, 5}), disc);
    DifferenceOperator s(Z(p, 26), Z(p, 25));
    const std::int64_t M = 10, N = 25;
    SeriesMatrix A = deform(sys, s, M, N, certify_deformation(sys, s, {}, 40));
    DifferenceOperator s2 = s.power(2);
    SeriesMatrix A2 = deform(sys, s2, M, N, certify_deformation(sys, s2, {}, 40));
    // composition only sees the known part, so the last few coefficients miss the tail
    CHECK(iterate_module(A, s, 2).truncated(6).agrees_with(A2.truncated(6)));
}

TEST_CASE("radius of convergence brackets") {
    const unsigned p = 3;
    DiffSystem one = scalar_system(poly(p, {1}), Region::line(p));
    for (const mpq_class& r : {mpq_class(-1), mpq_class(0), mpq_class(1, 2)}) {
        auto b = radius_at(one, LogRadius(r), 40);
        CHECK(b.contains(LogRadius::omega(p)));
    }
    // rho > 1: |G| = 1 > 1/rho is false, but for rank one with |g| > 1/rho the closed form is exact
    DiffSystem big = scalar_system(poly(p, {1, 0}).divided_by(Z(p, 9)), Region::line(p));
    auto b = radius_at(big, LogRadius::exponent(0), 20);
    CHECK(b.exact);
    CHECK(b.lower == LogRadius::exponent(5, 2));
    Region disc = Region::disc(Padic::zero(p), LogRadius::exponent(1));
    auto z = radius_at(scalar_system(poly(p, {0}), disc), LogRadius::exponent(2), 20);
    CHECK(z.lower == LogRadius::exponent(1));
    CHECK(z.upper == LogRadius::exponent(1));
}

TEST_CASE("radius of the g_0 equation at r_0 is omega |p|^{1/p}") {
    auto gs = gamma_taylor(3, 200, 40);
    auto g0 = g0_series(gs);
    DiffSystem sys = scalar_system(g0.g0.truncated(120), Region::disc(Padic::zero(3), LogRadius::exponent(0)));
    auto b = radius_at(sys, LogRadius::exponent(1, 3), 60);
    CHECK(b.contains_exponent(mpq_class(5, 6)));
}
