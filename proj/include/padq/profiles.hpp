#pragma once

#include <optional>
#include <vector>

#include "padq/series.hpp"

namespace padq {

// Exponent-affine piece on [from, to]: r -> alpha + beta r (exponents, so beta = 1 is |q-1| rho).
struct ProfilePiece {
    mpq_class from, to;
    mpq_class alpha;
    long beta = 0;

    mpq_class at(const mpq_class& r) const { return alpha + beta * r; }
};

// rho -> |(q-1)T + h|(x_{c,rho}) along r in [r_lo, r_hi], pieces ordered by increasing r.
struct SegmentProfile {
    Padic center;
    mpq_class r_lo, r_hi;
    std::vector<ProfilePiece> pieces;
    bool vanishes = false;  // q = 1 and h = 0: the radius is identically zero

    LogRadius at(const mpq_class& r) const;
    std::vector<mpq_class> breakpoints() const;
};

SegmentProfile sigma_radius_profile(const DifferenceOperator& sigma, const Padic& c, const LogRadius& r_lo,
                                    const LogRadius& r_hi);

enum class DiscKind { Open, Closed };
bool stable_disc(const DifferenceOperator& sigma, const Padic& c, const LogRadius& rho, DiscKind kind);

// Fixed rigid point a = -h/(q-1); nullopt when q = 1 (the fixed point is at infinity).
std::optional<Padic> controlling_graph_endpoint(const DifferenceOperator& sigma, std::int64_t N_if_inexact = 64);

// Sum of outgoing log-slopes at exponent r along the segment (toward larger and smaller rho).
// Equals the number of zeros of (q-1)T + h in D(c, rho) minus those in D^-(c, rho) for an interior r.
long profile_laplacian(const SegmentProfile& prof, const mpq_class& r);

}  // namespace padq
