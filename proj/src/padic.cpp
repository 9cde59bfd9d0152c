#include "padq/padic.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <vector>

namespace padq {

const char* error_code_name(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::DivisionByZero: return "division-by-zero";
        case ErrorCode::PrecisionLost: return "all-precision-lost";
        case ErrorCode::Uncertified: return "uncertified";
        case ErrorCode::Indeterminate: return "indeterminate";
        case ErrorCode::Incompatible: return "incompatible";
        case ErrorCode::MalformedModule: return "malformed-module";
        case ErrorCode::Divergence: return "divergence";
        case ErrorCode::Certification: return "certification-failure";
        case ErrorCode::Parse: return "parse-error";
        case ErrorCode::ResourceLimit: return "resource-limit";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

namespace {

std::int64_t add_sat(std::int64_t a, std::int64_t b) {
    if (a >= kInf || b >= kInf) return kInf;
    std::int64_t s = a + b;
    return s >= kInf ? kInf : s;
}

}  // namespace

const mpz_class& ppow(unsigned p, std::int64_t k) {
    // deque: earlier references stay valid while the cache grows (callers hold several at once)
    thread_local std::unordered_map<unsigned, std::deque<mpz_class>> cache;
    if (k < 0) fail(ErrorCode::InvalidArgument, "ppow: negative exponent");
    if (k > 2000000) fail(ErrorCode::ResourceLimit, "ppow: exponent too large");
    auto& v = cache[p];
    if (v.empty()) v.emplace_back(1);
    while (static_cast<std::int64_t>(v.size()) <= k) {
        mpz_class next = v.back() * p;
        v.push_back(std::move(next));
    }
    return v[static_cast<std::size_t>(k)];
}

std::int64_t vp(const mpz_class& a, unsigned p) {
    if (a == 0) return kInf;
    mpz_class t;
    mpz_class pz = p;
    return static_cast<std::int64_t>(mpz_remove(t.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t()));
}

std::int64_t vp_factorial(std::uint64_t n, unsigned p) {
    std::int64_t v = 0;
    while (n) {
        n /= p;
        v += static_cast<std::int64_t>(n);
    }
    return v;
}

Padic Padic::zero(unsigned p, std::int64_t N) {
    Padic z;
    z.p_ = p;
    z.N_ = std::min(N, kInf);
    return z;
}

Padic Padic::from_parts(unsigned p, std::int64_t v, mpz_class m, std::int64_t N) {
    if (p < 3) fail(ErrorCode::InvalidArgument, "prime must be >= 3");
    Padic x;
    x.p_ = p;
    x.v_ = m == 0 ? kInf : v;
    x.m_ = std::move(m);
    x.N_ = std::min(N, kInf);
    x.normalize();
    return x;
}

Padic Padic::from_integer(unsigned p, const mpz_class& a, std::int64_t N) {
    return from_parts(p, 0, a, N);
}

Padic Padic::p_power(unsigned p, std::int64_t k) { return from_parts(p, k, 1, kInf); }

Padic Padic::from_rational(unsigned p, const mpz_class& a, const mpz_class& b, std::int64_t N) {
    if (b == 0) fail(ErrorCode::DivisionByZero, "from_rational: zero denominator");
    if (a == 0) return zero(p);
    mpq_class q(a, b);
    q.canonicalize();
    return from_rational(p, q, N);
}

Padic Padic::from_rational(unsigned p, const mpq_class& q, std::int64_t N) {
    if (p < 3) fail(ErrorCode::InvalidArgument, "prime must be >= 3");
    if (q == 0) return zero(p);
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz = p, t;
    std::int64_t vn = static_cast<std::int64_t>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
    std::int64_t vd = static_cast<std::int64_t>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    std::int64_t v = vn - vd;
    if (den == 1) return from_parts(p, v, num, kInf);
    if (N >= kInf) fail(ErrorCode::InvalidArgument, "from_rational: value not exactly representable; give a precision");
    if (v >= N) return zero(p, N);
    const mpz_class& mod = ppow(p, N - v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class m = num * inv;
    mpz_fdiv_r(m.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
    return from_parts(p, v, m, N);
}

void Padic::normalize() {
    if (m_ == 0 || v_ >= kInf) {
        v_ = kInf;
        m_ = 0;
        return;
    }
    mpz_class pz = p_;
    v_ += static_cast<std::int64_t>(mpz_remove(m_.get_mpz_t(), m_.get_mpz_t(), pz.get_mpz_t()));
    if (N_ < kInf) {
        if (v_ >= N_) {
            v_ = kInf;
            m_ = 0;
            return;
        }
        mpz_fdiv_r(m_.get_mpz_t(), m_.get_mpz_t(), ppow(p_, N_ - v_).get_mpz_t());
    }
}

void Padic::check_same_prime(const Padic& o) const {
    if (p_ != o.p_ || p_ == 0) fail(ErrorCode::InvalidArgument, "p-adic operands over different primes");
}

std::int64_t Padic::relative_precision() const {
    if (is_exact()) return kInf;
    if (is_zero()) return 0;
    return N_ - v_;
}

Padic Padic::with_precision(std::int64_t N) const {
    if (N >= N_) return *this;
    Padic r = *this;
    r.N_ = N;
    r.normalize();
    return r;
}

Padic Padic::shifted(std::int64_t k) const {
    Padic r = *this;
    if (!r.is_zero()) r.v_ += k;
    if (r.N_ < kInf) r.N_ += k;
    return r;
}

Padic Padic::operator-() const {
    Padic r = *this;
    r.m_ = -r.m_;
    if (r.N_ < kInf && r.v_ < kInf) mpz_fdiv_r(r.m_.get_mpz_t(), r.m_.get_mpz_t(), ppow(p_, N_ - v_).get_mpz_t());
    return r;
}

Padic operator+(const Padic& x, const Padic& y) {
    x.check_same_prime(y);
    std::int64_t N = std::min(x.N_, y.N_);
    if (x.is_zero()) return y.with_precision(N);
    if (y.is_zero()) return x.with_precision(N);
    std::int64_t vmin = std::min(x.v_, y.v_);
    if (vmin >= N) return Padic::zero(x.p_, N);
    if (y.v_ >= N) return x.with_precision(N);
    if (x.v_ >= N) return y.with_precision(N);
    mpz_class m = x.m_ * ppow(x.p_, x.v_ - vmin) + y.m_ * ppow(x.p_, y.v_ - vmin);
    return Padic::from_parts(x.p_, vmin, std::move(m), N);
}

Padic operator-(const Padic& x, const Padic& y) { return x + (-y); }

Padic operator*(const Padic& x, const Padic& y) {
    x.check_same_prime(y);
    if (x.is_exact_zero() || y.is_exact_zero()) return Padic::zero(x.p_);
    std::int64_t vxe = x.is_zero() ? x.N_ : x.v_;
    std::int64_t vye = y.is_zero() ? y.N_ : y.v_;
    std::int64_t N = std::min(add_sat(x.N_, vye), add_sat(y.N_, vxe));
    if (x.is_zero() || y.is_zero()) return Padic::zero(x.p_, N);
    return Padic::from_parts(x.p_, x.v_ + y.v_, x.m_ * y.m_, N);
}

Padic Padic::divide(const Padic& x, const Padic& y, std::int64_t N_if_inexact) {
    x.check_same_prime(y);
    if (y.is_zero()) fail(ErrorCode::DivisionByZero, "p-adic division by zero");
    if (x.is_exact_zero()) return zero(x.p_);
    std::int64_t vxe = x.is_zero() ? x.N_ : x.v_;
    std::int64_t N = std::min(x.N_ >= kInf ? kInf : x.N_ - y.v_,
                              y.N_ >= kInf ? kInf : add_sat(y.N_, vxe - 2 * y.v_));
    if (x.is_zero()) {
        if (y.v_ > x.N_) fail(ErrorCode::PrecisionLost, "divisor valuation exceeds dividend precision");
        return zero(x.p_, N);
    }
    std::int64_t v = x.v_ - y.v_;
    if (N >= kInf) {
        if (mpz_divisible_p(x.m_.get_mpz_t(), y.m_.get_mpz_t())) {
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), x.m_.get_mpz_t(), y.m_.get_mpz_t());
            return from_parts(x.p_, v, std::move(q), kInf);
        }
        if (N_if_inexact >= kInf)
            fail(ErrorCode::InvalidArgument, "exact quotient not representable; a precision is required");
        N = N_if_inexact;
    }
    if (v >= N) return zero(x.p_, N);
    const mpz_class& mod = ppow(x.p_, N - v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), y.m_.get_mpz_t(), mod.get_mpz_t());
    mpz_class m = x.m_ * inv;
    return from_parts(x.p_, v, std::move(m), N);
}

Padic operator/(const Padic& x, const Padic& y) { return Padic::divide(x, y, kInf); }

Padic Padic::inverse(std::int64_t N_if_inexact) const { return divide(one(p_), *this, N_if_inexact); }

Padic Padic::pow(std::uint64_t e) const {
    Padic result = one(p_);
    Padic base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

mpq_class Padic::to_rational() const {
    if (is_zero()) return 0;
    mpq_class r(m_);
    if (v_ >= 0)
        r *= ppow(p_, v_);
    else
        r /= ppow(p_, -v_);
    r.canonicalize();
    return r;
}

mpz_class Padic::residue() const {
    if (is_zero()) return 0;
    if (v_ < 0) fail(ErrorCode::InvalidArgument, "residue of a non-integral element");
    return m_ * ppow(p_, v_);
}

bool Padic::identical(const Padic& o) const {
    return p_ == o.p_ && v_ == o.v_ && N_ == o.N_ && m_ == o.m_;
}

std::string Padic::to_string() const {
    std::string tail = is_exact() ? "" : " + O(" + std::to_string(p_) + "^" + std::to_string(N_) + ")";
    if (is_zero()) return is_exact() ? "0" : "O(" + std::to_string(p_) + "^" + std::to_string(N_) + ")";
    return rational_string(to_rational()) + tail;
}

std::string rational_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

LogRadius LogRadius::zero_radius() {
    LogRadius r;
    r.kind_ = Kind::PosInf;
    return r;
}

LogRadius LogRadius::infinite_radius() {
    LogRadius r;
    r.kind_ = Kind::NegInf;
    return r;
}

LogRadius LogRadius::parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return zero_radius();
    if (s == "-inf") return infinite_radius();
    mpq_class q;
    if (q.set_str(s, 10) != 0) fail(ErrorCode::Parse, "bad radius exponent '" + s + "'");
    q.canonicalize();
    return LogRadius(q);
}

const mpq_class& LogRadius::exp() const {
    if (kind_ != Kind::Finite) fail(ErrorCode::InvalidArgument, "exponent of an infinite log-radius");
    return r_;
}

int LogRadius::compare_exponent(const LogRadius& o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_) ? -1 : 1;
    if (kind_ != Kind::Finite) return 0;
    int c = cmp(r_, o.r_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

LogRadius operator*(const LogRadius& a, const LogRadius& b) {
    using K = LogRadius::Kind;
    if (a.kind_ == K::Finite && b.kind_ == K::Finite) return LogRadius(a.r_ + b.r_);
    if ((a.kind_ == K::PosInf && b.kind_ == K::NegInf) || (a.kind_ == K::NegInf && b.kind_ == K::PosInf))
        fail(ErrorCode::Indeterminate, "product of zero and infinite radius");
    if (a.kind_ == K::PosInf || b.kind_ == K::PosInf) return LogRadius::zero_radius();
    return LogRadius::infinite_radius();
}

LogRadius operator/(const LogRadius& a, const LogRadius& b) {
    using K = LogRadius::Kind;
    if (b.kind_ == K::PosInf) fail(ErrorCode::DivisionByZero, "division by zero radius");
    LogRadius inv = b;
    if (b.kind_ == K::Finite) inv.r_ = -b.r_;
    if (b.kind_ == K::NegInf) {
        if (a.kind_ == K::NegInf) fail(ErrorCode::Indeterminate, "infinite over infinite radius");
        return LogRadius::zero_radius();
    }
    return a * inv;
}

LogRadius LogRadius::root(long k) const {
    require(k > 0, "root order must be positive");
    if (kind_ != Kind::Finite) return *this;
    return LogRadius(r_ / mpq_class(k));
}

LogRadius LogRadius::pow(long k) const {
    require(k >= 0, "power must be non-negative");
    if (k == 0) return LogRadius(mpq_class(0));
    if (kind_ != Kind::Finite) return *this;
    return LogRadius(r_ * mpq_class(k));
}

std::string LogRadius::to_string() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        default: return rational_string(r_);
    }
}

LogRadius min_radius(const LogRadius& a, const LogRadius& b) { return a.radius_less(b) ? a : b; }
LogRadius max_radius(const LogRadius& a, const LogRadius& b) { return a.radius_less(b) ? b : a; }

LogRadius norm_of(const Padic& x) {
    if (x.is_zero()) return LogRadius::zero_radius();
    return LogRadius::exponent(mpq_class(x.valuation()));
}

}  // namespace padq
