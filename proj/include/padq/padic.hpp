#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

#include "padq/errors.hpp"

namespace padq {

// Sentinel for "+infinity" in valuations and absolute precisions.
inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// p^k for k >= 0, cached per thread.
const mpz_class& ppow(unsigned p, std::int64_t k);

// v_p of a nonzero integer.
std::int64_t vp(const mpz_class& a, unsigned p);
std::int64_t vp_factorial(std::uint64_t n, unsigned p);

// Element p^v * m of Q_p known modulo p^N (N = kInf means exact).
// Inexact mantissas are kept reduced in [0, p^(N-v)).
class Padic {
public:
    Padic() = default;

    static Padic zero(unsigned p, std::int64_t N = kInf);
    static Padic one(unsigned p) { return from_integer(p, 1); }
    static Padic from_integer(unsigned p, const mpz_class& a, std::int64_t N = kInf);
    static Padic from_rational(unsigned p, const mpz_class& a, const mpz_class& b, std::int64_t N);
    static Padic from_rational(unsigned p, const mpq_class& q, std::int64_t N);
    static Padic from_parts(unsigned p, std::int64_t v, mpz_class m, std::int64_t N);
    static Padic p_power(unsigned p, std::int64_t k);

    unsigned prime() const { return p_; }
    std::int64_t valuation() const { return v_; }
    const mpz_class& unit() const { return m_; }
    std::int64_t precision() const { return N_; }
    bool is_exact() const { return N_ >= kInf; }
    bool is_zero() const { return v_ >= kInf; }
    bool is_exact_zero() const { return is_zero() && is_exact(); }

    // Relative precision N - v (kInf for exact values, 0-ish for inexact zeros).
    std::int64_t relative_precision() const;

    Padic with_precision(std::int64_t N) const;
    Padic shifted(std::int64_t k) const;  // times p^k, exact operation
    Padic pow(std::uint64_t e) const;
    Padic inverse(std::int64_t N_if_inexact = kInf) const;

    // Exact rational value (exact elements) or the canonical representative.
    mpq_class to_rational() const;
    // Integer representative modulo p^N when v >= 0 (requires finite N or integral exact value).
    mpz_class residue() const;

    Padic operator-() const;
    friend Padic operator+(const Padic& x, const Padic& y);
    friend Padic operator-(const Padic& x, const Padic& y);
    friend Padic operator*(const Padic& x, const Padic& y);
    // Exact operands with a non-integral unit quotient throw; use divide() with a precision.
    friend Padic operator/(const Padic& x, const Padic& y);
    static Padic divide(const Padic& x, const Padic& y, std::int64_t N_if_inexact);

    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }

    // x and y are indistinguishable at the common precision.
    bool agrees_with(const Padic& o) const { return (*this - o).is_zero(); }
    // Same representation (value, valuation and precision).
    bool identical(const Padic& o) const;

    std::string to_string() const;

private:
    void normalize();
    void check_same_prime(const Padic& o) const;

    unsigned p_ = 0;
    std::int64_t v_ = kInf;
    mpz_class m_ = 0;
    std::int64_t N_ = kInf;
};

// Exact log-scale radius: rho = p^(-r). Exponent +inf is radius 0, -inf is radius +inf.
class LogRadius {
public:
    enum class Kind { NegInf, Finite, PosInf };

    LogRadius() = default;
    explicit LogRadius(const mpq_class& r) : kind_(Kind::Finite), r_(r) { r_.canonicalize(); }
    static LogRadius exponent(const mpq_class& r) { return LogRadius(r); }
    static LogRadius exponent(long num, long den = 1) { return LogRadius(mpq_class(num, den)); }
    static LogRadius zero_radius();
    static LogRadius infinite_radius();
    static LogRadius omega(unsigned p) { return exponent(1, long(p) - 1); }
    static LogRadius parse(const std::string& s);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_zero_radius() const { return kind_ == Kind::PosInf; }
    bool is_infinite_radius() const { return kind_ == Kind::NegInf; }
    const mpq_class& exp() const;

    // Ordering of exponents (the reverse of radius ordering).
    int compare_exponent(const LogRadius& o) const;
    bool radius_less(const LogRadius& o) const { return compare_exponent(o) > 0; }
    bool radius_leq(const LogRadius& o) const { return compare_exponent(o) >= 0; }
    friend bool operator==(const LogRadius& a, const LogRadius& b) { return a.compare_exponent(b) == 0; }
    friend bool operator!=(const LogRadius& a, const LogRadius& b) { return !(a == b); }

    // Products and quotients of radii (sums and differences of exponents).
    friend LogRadius operator*(const LogRadius& a, const LogRadius& b);
    friend LogRadius operator/(const LogRadius& a, const LogRadius& b);
    LogRadius root(long k) const;
    LogRadius pow(long k) const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::Finite;
    mpq_class r_ = 0;
};

LogRadius min_radius(const LogRadius& a, const LogRadius& b);
LogRadius max_radius(const LogRadius& a, const LogRadius& b);

LogRadius norm_of(const Padic& x);

std::string rational_string(const mpq_class& q);

}  // namespace padq
