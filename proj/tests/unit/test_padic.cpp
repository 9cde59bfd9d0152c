#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

TEST_CASE("rational 25/12 in Q_5 has valuation 2 and unit 12^-1") {
    Padic x = Padic::from_rational(5, 25, 12, 10);
    CHECK(x.valuation() == 2);
    CHECK(x.precision() == 10);
    mpz_class mod = ppow(5, 8);
    CHECK(mpz_class(x.unit() * 12 - 1) % mod == 0);
    CHECK(norm_of(x) == LogRadius::exponent(2));
}

TEST_CASE("integral rationals are exact and zero has infinite valuation") {
    Padic one = Padic::from_rational(5, 1, 1, 10);
    CHECK(one.valuation() == 0);
    CHECK(one.unit() == 1);
    Padic z = Padic::from_rational(3, 0, 7, 10);
    CHECK(z.is_zero());
    CHECK(norm_of(z).is_zero_radius());
    CHECK(code_of([] { Padic::from_rational(3, 1, 0, 10); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("hand arithmetic: 3 + 6 = 9 and p * p^-1 = 1") {
    Padic s = Z(3, 3) + Z(3, 6);
    CHECK(s.valuation() == 2);
    CHECK(s.unit() == 1);
    CHECK(s.is_exact());
    Padic u = Padic::p_power(3, 1) * Padic::p_power(3, -1);
    CHECK(u.is_exact());
    CHECK(u.identical(Padic::one(3)));
    CHECK(norm_of(Padic::p_power(7, 1)) == LogRadius::exponent(1));
}

TEST_CASE("precision follows the minimum rule") {
    Padic a = Padic::from_integer(3, 1, 5), b = Padic::from_integer(3, -1, 2);
    Padic s = a + b;
    CHECK(s.is_zero());
    CHECK(s.precision() == 2);
    // mul: min(N1 + v2, N2 + v1)
    Padic x = Padic::from_parts(3, 1, 2, 6), y = Padic::from_parts(3, 2, 1, 4);
    CHECK((x * y).precision() == std::min<std::int64_t>(6 + 2, 4 + 1));
    CHECK(Padic::from_integer(3, 1, 6).shifted(-2).precision() == 4);
}

TEST_CASE("division errors") {
    CHECK(code_of([] { (void)(Z(5, 1) / Padic::zero(5)); }) == ErrorCode::DivisionByZero);
    Padic low = Padic::zero(3, 3);
    CHECK(code_of([&] { (void)Padic::divide(low, Padic::p_power(3, 5), 10); }) == ErrorCode::PrecisionLost);
}

TEST_CASE("norms are multiplicative and sums ultrametric on random rationals") {
    std::mt19937_64 g(7);
    for (unsigned p : {3u, 5u, 7u}) {
        for (int i = 0; i < 300; ++i) {
            long a = rnd(g, -5000, 5000), b = rnd(g, 1, 5000), c = rnd(g, -5000, 5000), d = rnd(g, 1, 5000);
            if (a == 0 || c == 0) continue;
            Padic x = Padic::from_rational(p, a, b, 60), y = Padic::from_rational(p, c, d, 60);
            CHECK((x * y).valuation() == x.valuation() + y.valuation());
            Padic s = x + y;
            std::int64_t m = std::min(x.valuation(), y.valuation());
            if (!s.is_zero()) CHECK(s.valuation() >= m);
            if (x.valuation() != y.valuation()) CHECK(s.valuation() == m);
        }
    }
}

TEST_CASE("residues match direct modular arithmetic") {
    std::mt19937_64 g(11);
    const unsigned p = 5;
    const std::int64_t N = 20;
    mpz_class mod = ppow(p, N);
    for (int i = 0; i < 200; ++i) {
        long a = rnd(g, 0, 100000), b = rnd(g, 1, 100000);
        if (b % p == 0) continue;
        Padic x = Padic::from_rational(p, a, b, N);
        mpz_class want = (mpz_class(a) * modinv(b, mod)) % mod;
        CHECK(x.residue() == want);
    }
}

TEST_CASE("log radii compare in reverse and compose additively") {
    LogRadius a = LogRadius::exponent(1, 2), b = LogRadius::exponent(1, 3);
    CHECK(a.radius_less(b));
    CHECK((a * b) == LogRadius::exponent(5, 6));
    CHECK((a / b) == LogRadius::exponent(1, 6));
    CHECK(LogRadius::exponent(3, 4).root(3) == LogRadius::exponent(1, 4));
    CHECK(LogRadius::omega(3) == LogRadius::exponent(1, 2));
    CHECK(LogRadius::zero_radius().radius_less(a));
    CHECK(a.radius_less(LogRadius::infinite_radius()));
    CHECK(LogRadius::parse("inf").is_zero_radius());
    CHECK(LogRadius::parse("-3/4") == LogRadius::exponent(-3, 4));
}
