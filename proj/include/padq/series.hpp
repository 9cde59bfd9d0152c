#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padq/padic.hpp"

namespace padq {

// sigma_{q,h}: T -> qT + h, with |q - 1| < 1.
class DifferenceOperator {
public:
    DifferenceOperator(Padic q, Padic h);

    unsigned prime() const { return q_.prime(); }
    const Padic& q() const { return q_; }
    const Padic& h() const { return h_; }

    Padic apply(const Padic& c) const { return q_ * c + h_; }
    // sigma(c) - c = (q - 1)c + h
    Padic delta_at(const Padic& c) const;
    bool is_identity() const;
    bool q_is_one() const { return (q_ - Padic::one(prime())).is_zero(); }

    // Ring-automorphism composition: (s1 o s2)(T) = s1(s2(T)) = sigma_{q1 q2, q2 h1 + h2}.
    static DifferenceOperator compose(const DifferenceOperator& s1, const DifferenceOperator& s2);
    // sigma^n = sigma_{q^n, [n]_q h}
    DifferenceOperator power(std::uint64_t n) const;

private:
    Padic q_, h_;
};

// Truncated Laurent series sum_{n >= min_index} a_n (T - c)^n known modulo (T - c)^(order + 1).
// order == kInf marks an exact polynomial.
class Series {
public:
    Series() = default;
    Series(unsigned p, std::vector<Padic> coeffs, std::int64_t order, Padic center = {}, std::int64_t min_index = 0);

    static Series zero(unsigned p, std::int64_t order = kInf, Padic center = {});
    static Series constant(const Padic& a, std::int64_t order = kInf, Padic center = {});
    static Series polynomial(unsigned p, std::vector<Padic> coeffs, Padic center = {});
    // Exact polynomial from integer/rational-free integer coefficients.
    static Series from_integers(unsigned p, const std::vector<long>& coeffs, std::int64_t order = kInf);

    unsigned prime() const { return p_; }
    const Padic& center() const { return center_; }
    std::int64_t min_index() const { return min_index_; }
    std::int64_t order() const { return order_; }
    bool is_polynomial() const { return order_ >= kInf; }
    // Largest stored index (min_index - 1 when nothing is stored).
    std::int64_t max_index() const { return min_index_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
    const std::vector<Padic>& coeffs() const { return coeffs_; }

    Padic coeff(std::int64_t n) const;
    // Lowest index whose coefficient is not an exact zero (max_index()+1 if none).
    std::int64_t lowest_index() const;
    bool is_exact_zero() const;
    bool is_zero() const;  // every coefficient is zero to its precision
    std::int64_t min_precision() const;

    Series truncated(std::int64_t M) const;
    Series with_precision(std::int64_t N) const;
    Series with_center(const Padic& c) const;

    Series operator-() const;
    friend Series operator+(const Series& f, const Series& g);
    friend Series operator-(const Series& f, const Series& g);
    friend Series operator*(const Series& f, const Series& g);
    friend Series operator*(const Series& f, const Padic& a);
    friend Series operator*(const Padic& a, const Series& f) { return f * a; }
    Series divided_by(const Padic& a, std::int64_t N_if_inexact = kInf) const;
    // f / g as a Laurent series; order_cap bounds the result when it is an infinite expansion.
    static Series divide(const Series& f, const Series& g, std::int64_t order_cap = kInf,
                         std::int64_t N_if_inexact = kInf);
    // Multiply by (T - c)^k.
    Series shifted(std::int64_t k) const;

    Series derivative() const;
    Padic evaluate(const Padic& u) const;  // value at T - c = u of the known part

    // Coefficientwise agreement on the common known range.
    bool agrees_with(const Series& g) const;

    std::string to_string() const;

private:
    void check_compatible(const Series& g) const;
    void trim();

    unsigned p_ = 0;
    Padic center_;
    std::int64_t min_index_ = 0;
    std::int64_t order_ = kInf;
    std::vector<Padic> coeffs_;
};

// f(qT + h) re-expanded at the same center (binomial substitution of the known part).
Series compose_affine(const Series& f, const DifferenceOperator& sigma);
// Taylor shift: the same function expanded at a new center (known part only).
Series recenter(const Series& f, const Padic& new_center);

Series series_exp(const Series& f, std::int64_t N);
Series series_log(const Series& f, std::int64_t N);
Padic scalar_log(const Padic& u, std::int64_t N);

// (q,h)-Taylor expansion f = sum a~_n (T - c)^{[n]}_{q,h} with c the series center.
std::vector<Padic> to_twisted_basis(const Series& f, const DifferenceOperator& sigma);
Series from_twisted_basis(const std::vector<Padic>& a, const DifferenceOperator& sigma, const Padic& center,
                          std::int64_t order = kInf);
Series twisted_derivative(const Series& f, const DifferenceOperator& sigma);

// Square matrices of series sharing prime and center.
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(std::size_t rank, const Series& fill);
    static SeriesMatrix identity(std::size_t rank, unsigned p, std::int64_t order = kInf, Padic center = {});
    static SeriesMatrix zero(std::size_t rank, unsigned p, std::int64_t order = kInf, Padic center = {});
    static SeriesMatrix scalar(const Series& s) { return SeriesMatrix(1, s); }

    std::size_t rank() const { return r_; }
    Series& at(std::size_t i, std::size_t j) { return a_[i * r_ + j]; }
    const Series& at(std::size_t i, std::size_t j) const { return a_[i * r_ + j]; }
    unsigned prime() const { return a_.front().prime(); }
    const Padic& center() const { return a_.front().center(); }
    std::int64_t order() const;

    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator*(const SeriesMatrix& a, const Series& s);
    friend SeriesMatrix operator*(const SeriesMatrix& a, const Padic& s);

    template <class F>
    SeriesMatrix map(F&& f) const {
        SeriesMatrix out = *this;
        for (auto& e : out.a_) e = f(e);
        return out;
    }
    SeriesMatrix truncated(std::int64_t M) const {
        return map([M](const Series& s) { return s.truncated(M); });
    }
    SeriesMatrix derivative() const {
        return map([](const Series& s) { return s.derivative(); });
    }
    bool agrees_with(const SeriesMatrix& o) const;
    bool is_zero() const;
    std::int64_t min_precision() const;

private:
    std::size_t r_ = 0;
    std::vector<Series> a_;
};

}  // namespace padq
