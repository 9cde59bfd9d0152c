#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

namespace {

const GammaSeries& gamma5() {
    static const GammaSeries gs = gamma_taylor(5, 60, 20);
    return gs;
}

bool congruent(const Padic& x, const mpz_class& n, std::int64_t k) {
    Padic d = x - Padic::from_integer(x.prime(), n);
    return d.valuation() >= k;
}

}  // namespace

TEST_CASE("Gamma_p at integers") {
    CHECK(gamma_at(0, 5) == 1);
    CHECK(gamma_at(1, 5) == -1);
    CHECK(gamma_at(2, 5) == 1);
    CHECK(gamma_at(3, 5) == -2);
    CHECK(gamma_at(6, 5) == 24);  // (-1)^6 * 1*2*3*4
    for (std::uint64_t n = 1; n < 40; ++n) {
        mpz_class lhs = gamma_at(n + 1, 7);
        mpz_class rhs = n % 7 ? mpz_class(-mpz_class(n) * gamma_at(n, 7)) : mpz_class(-gamma_at(n, 7));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Taylor series reproduces Gamma_p at multiples of p") {
    const auto& gs = gamma5();
    CHECK(gs.series.coeff(0).agrees_with(Padic::one(5)));
    CHECK(gs.min_precision >= 20);
    for (long k = 1; k <= 12; ++k) CHECK(congruent(gs.series.evaluate(Z(5, 5 * k)), gamma_at(5 * k, 5), 18));
}

TEST_CASE("shifted expansions agree with Gamma_p at kp + i") {
    const auto& gs = gamma5();
    for (std::int64_t i : {1, 2, 3}) {
        Series sh = gamma_shift(gs, i);
        for (long k = 0; k <= 6; ++k) CHECK(congruent(sh.evaluate(Z(5, 5 * k)), gamma_at(5 * k + i, 5), 18));
    }
}

TEST_CASE("g0 structure") {
    const auto& gs = gamma5();
    auto g0 = g0_series(gs);
    CHECK(g0.odd_nonzero.empty());
    CHECK(g0.g0.coeff(1).is_zero());
    CHECK(g0.g0.coeff(4).valuation() == -1);
    for (std::int64_t k = 0; k <= std::min<std::int64_t>(g0.g0.max_index(), 40); ++k) {
        Padic c = g0.g0.coeff(k);
        if (!c.is_zero()) CHECK(c.valuation() >= g0_coefficient_bound(k, 5));
    }
    CHECK(g0_coefficient_bound(3, 5) == 0);
    CHECK(g0_coefficient_bound(4, 5) == -1);
    CHECK(g0_coefficient_bound(20, 5) == -2);
}

TEST_CASE("L values: both routes agree and respect the bound") {
    const auto& gs = gamma5();
    auto t = lvalues(gs, 6);
    CHECK(t.lambda0.agrees_with(gs.series.coeff(1)));
    REQUIRE(t.entries.size() == 6);
    for (const auto& e : t.entries) {
        CHECK(e.routes_agree);
        if (e.valuation) CHECK(*e.valuation >= e.bound);
    }
}

TEST_CASE("power sums") {
    CHECK(sum_powers_exact(1, 1, 5) == 0);
    CHECK(sum_powers_exact(1, 5, 5) == mpq_class(25, 12));
    CHECK(sum_powers_exact(2, 11, 5) == mpq_class(1) + mpq_class(1, 4) + mpq_class(1, 9) + mpq_class(1, 16) +
                                            mpq_class(1, 36) + mpq_class(1, 49) + mpq_class(1, 64) +
                                            mpq_class(1, 81));
    for (std::int64_t k : {1, 7, 26, 40})
        CHECK(sum_powers(3, k, 5, 20).agrees_with(padic_from_rational(5, sum_powers_exact(3, k, 5), 20)));
    // p^-k S_1(p^k) -> 0 as k grows (Wolstenholme-type divisibility)
    std::int64_t prev = -1;
    for (std::int64_t k = 1; k <= 3; ++k) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), 5, k);
        std::int64_t v = sum_powers(1, pk.get_si(), 5, 30).valuation() - k;
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("sum identity for p = 3, l = 2") {
    auto gs = gamma_taylor(3, 120, 30);
    auto g0 = g0_series(gs);
    auto t = lvalues(gs, g0, 20);
    auto c = check_sum_identity(2, 2, t, g0, 30);
    CHECK(c.certified >= 8);
    CHECK(c.residual_valuation >= c.certified);
}

TEST_CASE("the Gamma module polynomial") {
    for (unsigned p : {3u, 5u, 7u}) {
        Series a = gamma_module_polynomial(p, 1);
        // -prod_{i<p}(T + i) = 1 - T^{p-1} mod p
        for (std::int64_t k = 0; k < std::int64_t(p); ++k) {
            long want = k == 0 ? 1 : (k == std::int64_t(p) - 1 ? -1 : 0);
            CHECK((a.coeff(k) - Z(p, want)).valuation() >= 1);
        }
        CHECK(gauss_norm(a - poly(p, {1}), LogRadius::exponent(0)) == LogRadius::exponent(0));
    }
    // A(1, np; 0) = Gamma_p(np): the sign is (-1)^{np}
    for (std::int64_t n = 1; n <= 4; ++n)
        CHECK(gamma_module_polynomial(5, n).coeff(0).agrees_with(Padic::from_integer(5, gamma_at(5 * n, 5))));
}

TEST_CASE("log Gamma is odd") {
    const auto& gs = gamma5();
    Series lg = series_log(gs.series, 18);
    for (std::int64_t k = 0; k <= 20; k += 2) CHECK(lg.coeff(k).is_zero());
}

TEST_CASE("functional equation residual vanishes") {
    const auto& gs = gamma5();
    auto r = functional_residual(gs, 2, 20);
    CHECK(r.vanishes);
    CHECK(r.coeffs.size() == 21);
}
