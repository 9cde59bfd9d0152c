#pragma once

#include <doctest.h>

#include <functional>
#include <random>

#include "padq/json_io.hpp"

namespace padq::test {

inline Padic Z(unsigned p, long a) { return Padic::from_integer(p, a); }

inline Series poly(unsigned p, std::vector<long> c) { return Series::from_integers(p, c); }

inline mpz_class modinv(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

inline long rnd(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Series rand_poly(std::mt19937_64& g, unsigned p, int deg, long bound) {
    std::vector<Padic> c;
    for (int i = 0; i <= deg; ++i) c.push_back(Z(p, rnd(g, -bound, bound)));
    return Series::polynomial(p, c);
}

}  // namespace padq::test
