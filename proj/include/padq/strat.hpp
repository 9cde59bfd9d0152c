#pragma once

#include <string>
#include <vector>

#include "padq/newton.hpp"
#include "padq/series.hpp"

namespace padq {

// Open disc D^-(c, outer) (inner = radius 0) or open annulus {inner < |T - c| < outer}.
struct Region {
    Padic center;
    LogRadius inner = LogRadius::zero_radius();
    LogRadius outer = LogRadius::infinite_radius();

    static Region disc(const Padic& c, const LogRadius& outer) { return {c, LogRadius::zero_radius(), outer}; }
    static Region annulus(const Padic& c, const LogRadius& inner, const LogRadius& outer) {
        return {c, inner, outer};
    }
    static Region line(unsigned p) { return {Padic::zero(p), LogRadius::zero_radius(), LogRadius::infinite_radius()}; }

    bool is_disc() const { return inner.is_zero_radius(); }
    // x_{c,rho} lies in the region or on its outer boundary germ.
    bool admits(const LogRadius& rho) const;
    bool contains_rigid(const Padic& a) const;
    // Radius of the maximal disc of the region through x_{c,rho}.
    LogRadius disc_radius_at(const LogRadius& rho) const;
    // Default sample for compatibility checks: boundary exponents plus a dyadic ladder inward.
    std::vector<LogRadius> default_sample() const;
};

struct DiffSystem {
    SeriesMatrix G;
    Region region;

    std::size_t rank() const { return G.rank(); }
    unsigned prime() const { return G.prime(); }
};

using StratSequence = std::vector<SeriesMatrix>;

// G_0 = Id, G_{n+1} = G_n' + G_n G.
StratSequence strat_sequence(const DiffSystem& sys, std::int64_t M);
// Independent route: G_{n+1} = sum_k C(n,k) G^(k) G_{n-k}.
StratSequence strat_sequence_binomial(const DiffSystem& sys, std::int64_t M);

enum class Verdict { Compatible, Incompatible, Inconclusive };
const char* verdict_name(Verdict v);

struct CertificatePoint {
    LogRadius point;       // rho of x_{c,rho}
    LogRadius r_sigma;     // |(q-1)T + h|(x)
    LogRadius generic_lo;  // lower bound of the generic radius
    LogRadius generic_hi;  // upper bound
    Verdict verdict;
};

struct CompatibilityCertificate {
    std::vector<CertificatePoint> points;
    Verdict verdict = Verdict::Inconclusive;
    bool extends_to_disc = false;  // verdict at the outermost sample extends inward
    std::string inequality = "strict";
    std::string source;  // "differential" or "difference"
};

CertificatePoint classify_point(const LogRadius& rho, const LogRadius& r_sigma, const RadiusBracket& generic);
CompatibilityCertificate assemble_certificate(std::vector<CertificatePoint> pts, std::string source);

// |(q-1)T + h| at x_{c,rho}.
LogRadius sigma_radius_at(const DifferenceOperator& sigma, const Padic& c, const LogRadius& rho);

// Radius of convergence of Y' = G Y at x_{c,rho}, bracketed.
RadiusBracket radius_at(const DiffSystem& sys, const LogRadius& rho, std::int64_t M);

CompatibilityCertificate certify_deformation(const DiffSystem& sys, const DifferenceOperator& sigma,
                                             const std::vector<LogRadius>& sample, std::int64_t M);

// A_sigma = sum_n G_n delta^n / n!, delta = (q-1)T + h, to order M and absolute precision N.
SeriesMatrix deform(const DiffSystem& sys, const DifferenceOperator& sigma, std::int64_t M, std::int64_t N,
                    const CompatibilityCertificate& cert);

}  // namespace padq
