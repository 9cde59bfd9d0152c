#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "padq/series.hpp"

namespace padq {

struct HullPoint {
    std::int64_t n;
    mpq_class v;
};

struct NewtonPolygon {
    std::vector<HullPoint> vertices;
    std::vector<bool> vertex_provisional;
    bool provisional = false;

    std::vector<mpq_class> slopes() const;
    bool has_vertex(std::int64_t n, const mpq_class& v) const;
};

// Lower convex hull of points sorted by strictly increasing n.
std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts);

NewtonPolygon newton_polygon(const Series& f);

// Bracket of the radius of convergence liminf |a_n|^{-1/n} as radii: lower <= R <= upper.
// exp_lo / exp_hi are the corresponding exponents (exp_lo <= r* <= exp_hi).
struct RadiusBracket {
    LogRadius lower;
    LogRadius upper;
    bool exact = false;

    mpq_class exp_lo() const { return upper.exp(); }
    mpq_class exp_hi() const { return lower.exp(); }
    bool contains_exponent(const mpq_class& r) const;
    bool contains(const LogRadius& R) const;
};

// Bracket for the growth exponent limsup(-v_n / n) of a point sequence observed on [0, M].
// lower = max over n in [M/2, M] of the chord slope from the first point;
// upper = max chord slope between [M/4, M/2] and [M/2, M] with span >= M/2.
std::optional<RadiusBracket> growth_bracket(const std::vector<HullPoint>& pts, std::int64_t M);

RadiusBracket radius_estimate(const Series& f);

// Linear lower bound v(a_m) >= intercept + slope * m for dropped indices m > last_index.
struct TailModel {
    mpq_class slope;
    mpq_class intercept;
    std::int64_t last_index;

    mpq_class bound(std::int64_t m) const { return intercept + slope * m; }
};

std::optional<TailModel> tail_model(const Series& f);

class UncertifiedError : public Error {
public:
    UncertifiedError(const std::string& what, LogRadius best)
        : Error(ErrorCode::Uncertified, what), best_bound_(std::move(best)) {}
    const LogRadius& best_bound() const { return best_bound_; }

private:
    LogRadius best_bound_;
};

struct GaussNormResult {
    LogRadius norm;        // finite maximum over known coefficients
    LogRadius best_bound;  // norm <= best_bound including inexact zeros and tail
    bool certified = false;
    std::int64_t argmax = 0;
};

GaussNormResult gauss_norm_estimate(const Series& f, const LogRadius& rho);
LogRadius gauss_norm(const Series& f, const LogRadius& rho);

// Max of entry norms for a matrix (exponent-wise min).
GaussNormResult gauss_norm_estimate(const SeriesMatrix& m, const LogRadius& rho);

}  // namespace padq
