#include "padq/series.hpp"

#include <algorithm>
#include <sstream>

namespace padq {

namespace {

std::int64_t add_sat(std::int64_t a, std::int64_t b) {
    if (a >= kInf || b >= kInf) return kInf;
    return std::min(a + b, kInf);
}

// Coefficients (index 0..deg) of sum_n a_n (q u + d)^n for a power-series coefficient vector.
std::vector<Padic> substitute_linear(const std::vector<Padic>& a, const Padic& q, const Padic& d) {
    if (a.empty()) return {};
    unsigned p = q.prime();
    if (d.is_exact_zero()) {
        std::vector<Padic> out(a.size());
        Padic qn = Padic::one(p);
        for (std::size_t n = 0; n < a.size(); ++n) {
            out[n] = a[n] * qn;
            qn = qn * q;
        }
        return out;
    }
    // Horner: g <- g * (q u + d) + a_n
    std::vector<Padic> g{a.back()};
    for (std::size_t n = a.size() - 1; n-- > 0;) {
        std::vector<Padic> next(g.size() + 1, Padic::zero(p));
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].is_exact_zero()) continue;
            next[i] += g[i] * d;
            next[i + 1] += g[i] * q;
        }
        next[0] += a[n];
        g = std::move(next);
    }
    return g;
}

}  // namespace

DifferenceOperator::DifferenceOperator(Padic q, Padic h) : q_(std::move(q)), h_(std::move(h)) {
    if (q_.prime() == 0 || q_.prime() != h_.prime())
        fail(ErrorCode::InvalidArgument, "difference operator: q and h must share a prime");
    Padic qm1 = q_ - Padic::one(q_.prime());
    if (!qm1.is_zero() && qm1.valuation() < 1)
        fail(ErrorCode::InvalidArgument, "difference operator requires |q - 1| < 1");
}

Padic DifferenceOperator::delta_at(const Padic& c) const {
    return (q_ - Padic::one(prime())) * c + h_;
}

bool DifferenceOperator::is_identity() const { return q_is_one() && h_.is_zero(); }

DifferenceOperator DifferenceOperator::compose(const DifferenceOperator& s1, const DifferenceOperator& s2) {
    return DifferenceOperator(s1.q_ * s2.q_, s2.q_ * s1.h_ + s2.h_);
}

DifferenceOperator DifferenceOperator::power(std::uint64_t n) const {
    unsigned p = prime();
    Padic qn = Padic::one(p), qint = Padic::zero(p);
    for (std::uint64_t k = 0; k < n; ++k) {
        qint = qint + qn;
        qn = qn * q_;
    }
    return DifferenceOperator(qn, qint * h_);
}

Series::Series(unsigned p, std::vector<Padic> coeffs, std::int64_t order, Padic center, std::int64_t min_index)
    : p_(p), center_(center.prime() == 0 ? Padic::zero(p) : std::move(center)), min_index_(min_index),
      order_(std::min(order, kInf)), coeffs_(std::move(coeffs)) {
    if (p < 3) fail(ErrorCode::InvalidArgument, "series prime must be >= 3");
    for (const auto& c : coeffs_)
        if (c.prime() != p) fail(ErrorCode::InvalidArgument, "series coefficient over a different prime");
    if (center_.prime() != p) fail(ErrorCode::InvalidArgument, "series center over a different prime");
    if (order_ < kInf) {
        if (order_ < min_index_ - 1) order_ = min_index_ - 1;
        coeffs_.resize(static_cast<std::size_t>(order_ - min_index_ + 1), Padic::zero(p));
    }
    trim();
}

void Series::trim() {
    if (order_ < kInf) return;
    while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

Series Series::zero(unsigned p, std::int64_t order, Padic center) {
    return Series(p, {}, order, std::move(center));
}

Series Series::constant(const Padic& a, std::int64_t order, Padic center) {
    return Series(a.prime(), {a}, order, std::move(center));
}

Series Series::polynomial(unsigned p, std::vector<Padic> coeffs, Padic center) {
    return Series(p, std::move(coeffs), kInf, std::move(center));
}

Series Series::from_integers(unsigned p, const std::vector<long>& coeffs, std::int64_t order) {
    std::vector<Padic> c;
    c.reserve(coeffs.size());
    for (long a : coeffs) c.push_back(Padic::from_integer(p, a));
    return Series(p, std::move(c), order);
}

Padic Series::coeff(std::int64_t n) const {
    if (n > order_) fail(ErrorCode::InvalidArgument, "coefficient index beyond truncation order");
    if (n < min_index_ || n > max_index()) return Padic::zero(p_);
    return coeffs_[static_cast<std::size_t>(n - min_index_)];
}

std::int64_t Series::lowest_index() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_exact_zero()) return min_index_ + static_cast<std::int64_t>(i);
    return max_index() + 1;
}

bool Series::is_exact_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Padic& c) { return c.is_exact_zero(); });
}

bool Series::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Padic& c) { return c.is_zero(); });
}

std::int64_t Series::min_precision() const {
    std::int64_t N = kInf;
    for (const auto& c : coeffs_) N = std::min(N, c.precision());
    return N;
}

Series Series::truncated(std::int64_t M) const {
    if (M >= order_) return *this;
    std::vector<Padic> c;
    for (std::int64_t n = min_index_; n <= std::min(M, max_index()); ++n) c.push_back(coeff(n));
    return Series(p_, std::move(c), M, center_, min_index_);
}

Series Series::with_precision(std::int64_t N) const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = c.with_precision(N);
    r.trim();
    return r;
}

Series Series::with_center(const Padic& c) const {
    Series r = *this;
    r.center_ = c;
    return r;
}

void Series::check_compatible(const Series& g) const {
    if (p_ != g.p_) fail(ErrorCode::InvalidArgument, "series over different primes");
    if (!center_.identical(g.center_) && !(center_.is_exact() && g.center_.is_exact() && center_.agrees_with(g.center_)))
        fail(ErrorCode::InvalidArgument, "series expanded at different centers");
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Series operator+(const Series& f, const Series& g) {
    f.check_compatible(g);
    std::int64_t order = std::min(f.order_, g.order_);
    std::int64_t lo = std::min(f.min_index_, g.min_index_);
    std::int64_t hi = std::max(f.max_index(), g.max_index());
    if (order < kInf) hi = order;
    std::vector<Padic> c;
    if (hi >= lo) c.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) {
        Padic a = (n >= f.min_index_ && n <= f.max_index()) ? f.coeffs_[n - f.min_index_] : Padic::zero(f.p_);
        Padic b = (n >= g.min_index_ && n <= g.max_index()) ? g.coeffs_[n - g.min_index_] : Padic::zero(f.p_);
        c.push_back(a + b);
    }
    return Series(f.p_, std::move(c), order, f.center_, lo);
}

Series operator-(const Series& f, const Series& g) { return f + (-g); }

Series operator*(const Series& f, const Series& g) {
    f.check_compatible(g);
    unsigned p = f.p_;
    if ((f.is_polynomial() && f.is_exact_zero()) || (g.is_polynomial() && g.is_exact_zero()))
        return Series::zero(p, kInf, f.center_);
    std::int64_t lf = f.lowest_index(), lg = g.lowest_index();
    std::int64_t order = std::min(add_sat(f.order_, lg), add_sat(g.order_, lf));
    std::int64_t lo = lf + lg;
    std::int64_t hi = f.max_index() + g.max_index();
    if (order < kInf) hi = std::min(hi, order);
    if (order < kInf && order < lo) return Series(p, {}, order, f.center_, std::min(lo, order + 1));
    std::vector<Padic> c(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo + 1, 0)), Padic::zero(p));
    for (std::int64_t i = lf; i <= f.max_index(); ++i) {
        const Padic& a = f.coeffs_[i - f.min_index_];
        if (a.is_exact_zero()) continue;
        for (std::int64_t j = lg; j <= g.max_index() && i + j <= hi; ++j) {
            const Padic& b = g.coeffs_[j - g.min_index_];
            if (b.is_exact_zero()) continue;
            c[i + j - lo] += a * b;
        }
    }
    return Series(p, std::move(c), order, f.center_, lo);
}

Series operator*(const Series& f, const Padic& a) {
    Series r = f;
    for (auto& c : r.coeffs_) c = c * a;
    r.trim();
    return r;
}

Series Series::divided_by(const Padic& a, std::int64_t N_if_inexact) const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = Padic::divide(c, a, N_if_inexact);
    return r;
}

Series Series::divide(const Series& f, const Series& g, std::int64_t order_cap, std::int64_t N_if_inexact) {
    f.check_compatible(g);
    unsigned p = f.p_;
    std::int64_t m = g.lowest_index();
    if (m > g.max_index()) fail(ErrorCode::DivisionByZero, "series division by zero");
    const Padic& gm = g.coeffs_[m - g.min_index_];
    if (gm.is_zero()) fail(ErrorCode::DivisionByZero, "leading divisor coefficient indistinguishable from zero");
    bool monomial = g.is_polynomial() && g.max_index() == m;
    std::int64_t fl = f.min_index_;
    std::int64_t emax;
    if (monomial) {
        emax = f.is_polynomial() ? kInf : f.order_ - m;
    } else {
        emax = std::min(f.order_ >= kInf ? kInf : f.order_ - m, g.order_ >= kInf ? kInf : fl + g.order_ - 2 * m);
    }
    emax = std::min(emax, order_cap);
    if (emax >= kInf) {
        if (!monomial) fail(ErrorCode::InvalidArgument, "series division needs a truncation order");
        std::vector<Padic> c;
        for (const auto& a : f.coeffs_) c.push_back(Padic::divide(a, gm, N_if_inexact));
        return Series(p, std::move(c), kInf, f.center_, fl - m);
    }
    std::int64_t lo = fl - m;
    std::vector<Padic> q;
    for (std::int64_t e = lo; e <= emax; ++e) {
        std::int64_t k = e - lo;
        Padic acc = (fl + k <= f.max_index()) ? f.coeffs_[k] : Padic::zero(p);
        for (std::int64_t j = 0; j < k; ++j) {
            std::int64_t gi = m + k - j;
            if (gi > g.max_index()) continue;
            const Padic& b = g.coeffs_[gi - g.min_index_];
            if (b.is_exact_zero() || q[j].is_exact_zero()) continue;
            acc -= q[j] * b;
        }
        q.push_back(Padic::divide(acc, gm, N_if_inexact));
    }
    return Series(p, std::move(q), emax, f.center_, lo);
}

Series Series::shifted(std::int64_t k) const {
    Series r = *this;
    r.min_index_ += k;
    r.order_ = add_sat(order_, k);
    return r;
}

Series Series::derivative() const {
    std::vector<Padic> c;
    std::int64_t new_min = min_index_ == 0 ? 0 : min_index_ - 1;
    for (std::int64_t n = new_min + 1; n <= max_index(); ++n) {
        if (n == 0) {
            c.push_back(Padic::zero(p_));
            continue;
        }
        c.push_back(coeffs_[n - min_index_] * Padic::from_integer(p_, n));
    }
    std::int64_t order = order_ >= kInf ? kInf : order_ - 1;
    return Series(p_, std::move(c), order, center_, new_min);
}

Padic Series::evaluate(const Padic& u) const {
    if (min_index_ < 0) fail(ErrorCode::InvalidArgument, "evaluate: Laurent part not supported");
    Padic acc = Padic::zero(p_);
    for (std::int64_t n = max_index(); n >= 0; --n) acc = acc * u + coeff(n);
    return acc;
}

bool Series::agrees_with(const Series& g) const {
    if (p_ != g.p_) return false;
    std::int64_t lo = std::min(min_index_, g.min_index_);
    std::int64_t hi = std::min(order_, g.order_);
    if (hi >= kInf) hi = std::max(max_index(), g.max_index());
    for (std::int64_t n = lo; n <= hi; ++n) {
        Padic a = (n >= min_index_ && n <= max_index()) ? coeffs_[n - min_index_] : Padic::zero(p_);
        Padic b = (n >= g.min_index_ && n <= g.max_index()) ? g.coeffs_[n - g.min_index_] : Padic::zero(p_);
        if (!a.agrees_with(b)) return false;
    }
    return true;
}

std::string Series::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::int64_t n = min_index_; n <= max_index(); ++n) {
        const Padic& a = coeffs_[n - min_index_];
        if (a.is_exact_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << a.to_string() << ")";
        if (n != 0) os << "*u^" << n;
    }
    if (first) os << "0";
    if (order_ < kInf) os << " + O(u^" << order_ + 1 << ")";
    return os.str();
}

Series compose_affine(const Series& f, const DifferenceOperator& sigma) {
    if (f.min_index() < 0) fail(ErrorCode::InvalidArgument, "compose_affine: power series required");
    if (sigma.prime() != f.prime()) fail(ErrorCode::InvalidArgument, "compose_affine: prime mismatch");
    std::vector<Padic> a;
    for (std::int64_t n = 0; n <= f.max_index(); ++n) a.push_back(f.coeff(n));
    auto g = substitute_linear(a, sigma.q(), sigma.delta_at(f.center()));
    return Series(f.prime(), std::move(g), f.order(), f.center());
}

Series recenter(const Series& f, const Padic& new_center) {
    if (f.min_index() < 0) fail(ErrorCode::InvalidArgument, "recenter: power series required");
    std::vector<Padic> a;
    for (std::int64_t n = 0; n <= f.max_index(); ++n) a.push_back(f.coeff(n));
    auto g = substitute_linear(a, Padic::one(f.prime()), new_center - f.center());
    return Series(f.prime(), std::move(g), f.order(), new_center);
}

Padic scalar_log(const Padic& u, std::int64_t N) {
    unsigned p = u.prime();
    Padic x = u - Padic::one(p);
    if (x.is_exact_zero()) return Padic::zero(p);
    if (!x.is_zero() && x.valuation() < 1) fail(ErrorCode::InvalidArgument, "log requires |u - 1| < 1");
    std::int64_t vx = x.is_zero() ? x.precision() : x.valuation();
    Padic acc = Padic::zero(p, N);
    Padic xn = Padic::one(p);
    for (std::int64_t n = 1;; ++n) {
        xn = xn * x;
        std::int64_t lp = 0;
        for (std::int64_t t = n; t >= static_cast<std::int64_t>(p); t /= p) ++lp;
        if (n * vx - lp >= N && n > 1) break;
        Padic term = Padic::divide(xn, Padic::from_integer(p, n), N);
        acc = (n % 2) ? acc + term : acc - term;
    }
    return acc.with_precision(N);
}

Series series_exp(const Series& f, std::int64_t N) {
    unsigned p = f.prime();
    if (f.is_polynomial()) fail(ErrorCode::InvalidArgument, "series_exp: truncate the argument first");
    if (f.min_index() < 0 || !f.coeff(0).is_zero())
        fail(ErrorCode::InvalidArgument, "series_exp: constant term must vanish");
    std::int64_t M = f.order();
    Series g = f;
    if (!f.coeff(0).is_exact_zero()) {
        std::vector<Padic> c = f.coeffs();
        c[0] = Padic::zero(p);
        g = Series(p, c, M, f.center());
    }
    Series one = Series::constant(Padic::one(p), kInf, f.center());
    Series e = one;
    for (std::int64_t n = M; n >= 1; --n) {
        e = one + (g * e).truncated(M).divided_by(Padic::from_integer(p, n), N);
    }
    return e.truncated(M);
}

Series series_log(const Series& f, std::int64_t N) {
    unsigned p = f.prime();
    if (f.is_polynomial()) fail(ErrorCode::InvalidArgument, "series_log: truncate the argument first");
    if (f.min_index() < 0) fail(ErrorCode::InvalidArgument, "series_log: power series required");
    std::int64_t M = f.order();
    Padic u0 = f.coeff(0);
    if (u0.is_zero()) fail(ErrorCode::InvalidArgument, "series_log: constant term must be a unit");
    Padic l0 = scalar_log(u0, N);
    std::vector<Padic> c;
    c.push_back(Padic::zero(p));
    for (std::int64_t n = 1; n <= M; ++n) c.push_back(Padic::divide(f.coeff(n), u0, N));
    Series g(p, std::move(c), M, f.center());
    Series acc = Series::constant(Padic::from_rational(p, mpq_class(1, M), N), kInf, f.center());
    for (std::int64_t n = M - 1; n >= 1; --n) {
        Series inv = Series::constant(Padic::from_rational(p, mpq_class(1, n), N), kInf, f.center());
        acc = inv - (g * acc).truncated(M - 1);
    }
    Series r = (g * acc).truncated(M);
    return r + Series::constant(l0, kInf, f.center());
}

namespace {

// Offsets sigma^k(c) - c for k = 0..n-1.
std::vector<Padic> orbit_offsets(const DifferenceOperator& sigma, const Padic& c, std::size_t n) {
    std::vector<Padic> d;
    d.reserve(n);
    Padic x = c;
    for (std::size_t k = 0; k < n; ++k) {
        d.push_back(x - c);
        x = sigma.apply(x);
    }
    return d;
}

}  // namespace

std::vector<Padic> to_twisted_basis(const Series& f, const DifferenceOperator& sigma) {
    if (f.min_index() < 0) fail(ErrorCode::InvalidArgument, "twisted basis: power series required");
    unsigned p = f.prime();
    std::vector<Padic> cur;
    for (std::int64_t n = 0; n <= f.max_index(); ++n) cur.push_back(f.coeff(n));
    if (cur.empty()) return {};
    std::size_t D = cur.size() - 1;
    auto d = orbit_offsets(sigma, f.center(), D + 1);
    std::vector<Padic> out;
    out.reserve(D + 1);
    for (std::size_t k = 0; k <= D; ++k) {
        std::size_t deg = D - k;
        if (deg == 0) {
            out.push_back(cur[0]);
            break;
        }
        // synthetic division of cur by (u - d_k)
        std::vector<Padic> b(deg, Padic::zero(p));
        b[deg - 1] = cur[deg];
        for (std::size_t j = deg - 1; j >= 1; --j) b[j - 1] = cur[j] + d[k] * b[j];
        out.push_back(cur[0] + d[k] * b[0]);
        cur = std::move(b);
    }
    return out;
}

Series from_twisted_basis(const std::vector<Padic>& a, const DifferenceOperator& sigma, const Padic& center,
                          std::int64_t order) {
    unsigned p = sigma.prime();
    if (a.empty()) return Series::zero(p, order, center);
    auto d = orbit_offsets(sigma, center, a.size());
    std::vector<Padic> f{a.back()};
    for (std::size_t n = a.size() - 1; n-- > 0;) {
        // f <- f * (u - d_n) + a_n
        std::vector<Padic> next(f.size() + 1, Padic::zero(p));
        for (std::size_t i = 0; i < f.size(); ++i) {
            next[i + 1] += f[i];
            if (!d[n].is_exact_zero()) next[i] -= f[i] * d[n];
        }
        next[0] += a[n];
        f = std::move(next);
    }
    return Series(p, std::move(f), order, center);
}

Series twisted_derivative(const Series& f, const DifferenceOperator& sigma) {
    if (sigma.is_identity()) fail(ErrorCode::InvalidArgument, "twisted derivative of the identity; use d/dT");
    unsigned p = f.prime();
    auto a = to_twisted_basis(f, sigma);
    std::vector<Padic> b;
    Padic qint = Padic::one(p);  // [n]_q for n = 1, 2, ...
    for (std::size_t n = 1; n < a.size(); ++n) {
        b.push_back(qint * a[n]);
        qint = Padic::one(p) + sigma.q() * qint;
    }
    std::int64_t order = f.is_polynomial() ? kInf : f.order() - 1;
    return from_twisted_basis(b, sigma, f.center(), order);
}

SeriesMatrix::SeriesMatrix(std::size_t rank, const Series& fill) : r_(rank), a_(rank * rank, fill) {
    require(rank >= 1, "matrix rank must be >= 1");
}

SeriesMatrix SeriesMatrix::identity(std::size_t rank, unsigned p, std::int64_t order, Padic center) {
    SeriesMatrix m(rank, Series::zero(p, order, center));
    for (std::size_t i = 0; i < rank; ++i) m.at(i, i) = Series::constant(Padic::one(p), order, center);
    return m;
}

SeriesMatrix SeriesMatrix::zero(std::size_t rank, unsigned p, std::int64_t order, Padic center) {
    return SeriesMatrix(rank, Series::zero(p, order, std::move(center)));
}

std::int64_t SeriesMatrix::order() const {
    std::int64_t o = kInf;
    for (const auto& e : a_) o = std::min(o, e.order());
    return o;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    require(a.r_ == b.r_, "matrix rank mismatch");
    SeriesMatrix c = a;
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    require(a.r_ == b.r_, "matrix rank mismatch");
    SeriesMatrix c = a;
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    require(a.r_ == b.r_, "matrix rank mismatch");
    SeriesMatrix c = a;
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t j = 0; j < a.r_; ++j) {
            Series s = a.at(i, 0) * b.at(0, j);
            for (std::size_t k = 1; k < a.r_; ++k) s = s + a.at(i, k) * b.at(k, j);
            c.at(i, j) = s;
        }
    return c;
}

SeriesMatrix operator*(const SeriesMatrix& a, const Series& s) {
    return a.map([&](const Series& e) { return e * s; });
}

SeriesMatrix operator*(const SeriesMatrix& a, const Padic& s) {
    return a.map([&](const Series& e) { return e * s; });
}

bool SeriesMatrix::agrees_with(const SeriesMatrix& o) const {
    if (r_ != o.r_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!a_[i].agrees_with(o.a_[i])) return false;
    return true;
}

bool SeriesMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Series& s) { return s.is_zero(); });
}

std::int64_t SeriesMatrix::min_precision() const {
    std::int64_t N = kInf;
    for (const auto& e : a_) N = std::min(N, e.min_precision());
    return N;
}

}  // namespace padq
