#include "padq/profiles.hpp"

namespace padq {

LogRadius SegmentProfile::at(const mpq_class& r) const {
    if (vanishes) return LogRadius::zero_radius();
    require(r >= r_lo && r <= r_hi, "profile evaluated outside its segment");
    for (const auto& pc : pieces)
        if (r <= pc.to) return LogRadius(pc.at(r));
    return LogRadius(pieces.back().at(r));
}

std::vector<mpq_class> SegmentProfile::breakpoints() const {
    std::vector<mpq_class> out;
    for (std::size_t i = 1; i < pieces.size(); ++i) out.push_back(pieces[i].from);
    return out;
}

SegmentProfile sigma_radius_profile(const DifferenceOperator& sigma, const Padic& c, const LogRadius& r_lo,
                                    const LogRadius& r_hi) {
    require(r_lo.is_finite() && r_hi.is_finite(), "profile endpoints must be finite exponents");
    require(r_lo.exp() <= r_hi.exp(), "profile needs r_lo <= r_hi");
    unsigned p = sigma.prime();
    SegmentProfile prof;
    prof.center = c;
    prof.r_lo = r_lo.exp();
    prof.r_hi = r_hi.exp();
    Padic qm1 = sigma.q() - Padic::one(p);
    Padic dc = sigma.delta_at(c);
    if (qm1.is_zero() && dc.is_zero()) {
        prof.vanishes = true;
        return prof;
    }
    if (qm1.is_zero()) {
        prof.pieces.push_back({prof.r_lo, prof.r_hi, mpq_class(dc.valuation()), 0});
        return prof;
    }
    mpq_class vq(qm1.valuation());
    if (dc.is_zero()) {
        prof.pieces.push_back({prof.r_lo, prof.r_hi, vq, 1});
        return prof;
    }
    mpq_class vd(dc.valuation());
    // exponent min(vq + r, vd): linear branch for r below the break, constant above
    mpq_class rb = vd - vq;
    if (rb <= prof.r_lo) {
        prof.pieces.push_back({prof.r_lo, prof.r_hi, vd, 0});
    } else if (rb >= prof.r_hi) {
        prof.pieces.push_back({prof.r_lo, prof.r_hi, vq, 1});
    } else {
        prof.pieces.push_back({prof.r_lo, rb, vq, 1});
        prof.pieces.push_back({rb, prof.r_hi, vd, 0});
    }
    return prof;
}

bool stable_disc(const DifferenceOperator& sigma, const Padic& c, const LogRadius& rho, DiscKind kind) {
    Padic d = sigma.delta_at(c);
    if (d.is_zero()) return true;
    LogRadius nd = norm_of(d);
    return kind == DiscKind::Open ? nd.radius_less(rho) : nd.radius_leq(rho);
}

std::optional<Padic> controlling_graph_endpoint(const DifferenceOperator& sigma, std::int64_t N_if_inexact) {
    if (sigma.is_identity()) fail(ErrorCode::InvalidArgument, "identity operator fixes every point");
    if (sigma.q_is_one()) return std::nullopt;
    unsigned p = sigma.prime();
    return Padic::divide(-sigma.h(), sigma.q() - Padic::one(p), N_if_inexact);
}

long profile_laplacian(const SegmentProfile& prof, const mpq_class& r) {
    if (prof.vanishes || r <= prof.r_lo || r >= prof.r_hi) return 0;
    long left = 0, right = 0;
    for (const auto& pc : prof.pieces) {
        if (pc.from < r && r <= pc.to) left = pc.beta;
        if (pc.from <= r && r < pc.to) right = pc.beta;
    }
    // d log R / d log rho toward larger rho is beta of the piece below r; toward smaller rho it is -beta above
    return left - right;
}

}  // namespace padq
