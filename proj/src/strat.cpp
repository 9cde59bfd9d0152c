#include "padq/strat.hpp"

#include <sstream>

namespace padq {

bool Region::admits(const LogRadius& rho) const { return inner.radius_less(rho) && rho.radius_leq(outer); }

bool Region::contains_rigid(const Padic& a) const {
    LogRadius d = norm_of(a - center);
    if (is_disc()) return d.radius_less(outer);
    return inner.radius_less(d) && d.radius_less(outer);
}

LogRadius Region::disc_radius_at(const LogRadius& rho) const { return is_disc() ? outer : rho; }

std::vector<LogRadius> Region::default_sample() const {
    std::vector<LogRadius> out;
    if (outer.is_finite()) {
        const mpq_class& r = outer.exp();
        out.push_back(outer);
        for (int k = 1; k <= 5; ++k) out.emplace_back(r + mpq_class(1, 1L << k));
    } else {
        for (long e : {-1L, 0L, 1L}) out.push_back(LogRadius::exponent(e));
    }
    if (!is_disc() && inner.is_finite()) {
        const mpq_class& r = inner.exp();
        for (int k = 1; k <= 5; ++k) {
            LogRadius x(r - mpq_class(1, 1L << k));
            if (admits(x)) out.push_back(x);
        }
    }
    std::vector<LogRadius> kept;
    for (auto& x : out)
        if (admits(x)) kept.push_back(x);
    return kept;
}

StratSequence strat_sequence(const DiffSystem& sys, std::int64_t M) {
    require(M >= 0, "strat_sequence: M must be non-negative");
    const SeriesMatrix& G = sys.G;
    StratSequence seq;
    seq.reserve(M + 1);
    seq.push_back(SeriesMatrix::identity(G.rank(), G.prime(), kInf, G.center()));
    for (std::int64_t n = 0; n < M; ++n) seq.push_back(seq.back().derivative() + seq.back() * G);
    return seq;
}

StratSequence strat_sequence_binomial(const DiffSystem& sys, std::int64_t M) {
    require(M >= 0, "strat_sequence_binomial: M must be non-negative");
    const SeriesMatrix& G = sys.G;
    std::vector<SeriesMatrix> dG{G};
    for (std::int64_t k = 1; k < M; ++k) dG.push_back(dG.back().derivative());
    StratSequence seq{SeriesMatrix::identity(G.rank(), G.prime(), kInf, G.center())};
    for (std::int64_t n = 0; n < M; ++n) {
        SeriesMatrix acc = SeriesMatrix::zero(G.rank(), G.prime(), kInf, G.center());
        mpz_class binom = 1;
        for (std::int64_t k = 0; k <= n; ++k) {
            acc = acc + (dG[k] * seq[n - k]) * Padic::from_integer(G.prime(), binom);
            binom = binom * (n - k) / (k + 1);
        }
        seq.push_back(acc);
    }
    return seq;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Compatible: return "compatible";
        case Verdict::Incompatible: return "incompatible";
        default: return "inconclusive";
    }
}

CertificatePoint classify_point(const LogRadius& rho, const LogRadius& r_sigma, const RadiusBracket& generic) {
    CertificatePoint pt{rho, r_sigma, generic.lower, generic.upper, Verdict::Inconclusive};
    if (r_sigma.radius_less(generic.lower))
        pt.verdict = Verdict::Compatible;
    else if (generic.upper.radius_leq(r_sigma))
        pt.verdict = Verdict::Incompatible;
    return pt;
}

CompatibilityCertificate assemble_certificate(std::vector<CertificatePoint> pts, std::string source) {
    CompatibilityCertificate cert;
    cert.points = std::move(pts);
    cert.source = std::move(source);
    bool all = !cert.points.empty(), any_bad = false;
    for (const auto& pt : cert.points) {
        all = all && pt.verdict == Verdict::Compatible;
        any_bad = any_bad || pt.verdict == Verdict::Incompatible;
    }
    cert.verdict = any_bad ? Verdict::Incompatible : all ? Verdict::Compatible : Verdict::Inconclusive;
    cert.extends_to_disc = !cert.points.empty() && cert.points.front().verdict == Verdict::Compatible;
    return cert;
}

LogRadius sigma_radius_at(const DifferenceOperator& sigma, const Padic& c, const LogRadius& rho) {
    unsigned p = sigma.prime();
    LogRadius lin = (sigma.q() - Padic::one(p)).is_zero() ? LogRadius::zero_radius() : norm_of(sigma.q() - Padic::one(p)) * rho;
    return max_radius(lin, norm_of(sigma.delta_at(c)));
}

RadiusBracket radius_at(const DiffSystem& sys, const LogRadius& rho, std::int64_t M) {
    unsigned p = sys.prime();
    require(sys.region.admits(rho), "radius_at: point x_{c,rho} lies outside the region");
    require(rho.is_finite(), "radius_at: rho must be a finite positive radius");
    const mpq_class& r = rho.exp();
    LogRadius region_r = sys.region.disc_radius_at(rho);
    auto clip = [&](RadiusBracket br) {
        br.lower = min_radius(br.lower, region_r);
        br.upper = min_radius(br.upper, region_r);
        br.exact = br.lower == br.upper;
        return br;
    };

    GaussNormResult g1 = gauss_norm_estimate(sys.G, rho);
    if (g1.norm.is_zero_radius() && sys.G.is_zero()) return clip({region_r, region_r, true});
    mpq_class w = mpq_class(1, p - 1);
    // a-priori lower bound omega / max(rho^{-1}, |G|)
    mpq_class apriori = g1.norm.is_finite() ? mpq_class(w - std::min(mpq_class(-r), g1.norm.exp())) : mpq_class(w + r);
    if (sys.rank() == 1 && g1.certified && g1.norm.is_finite() && g1.norm.exp() < -r) {
        LogRadius R(apriori);
        return clip({R, R, true});
    }

    StratSequence seq = strat_sequence(sys, M);
    std::vector<HullPoint> pts;
    for (std::int64_t n = 0; n <= M; ++n) {
        GaussNormResult gn = gauss_norm_estimate(seq[n], rho);
        if (!gn.norm.is_finite()) continue;
        pts.push_back({n, gn.norm.exp() - mpq_class(vp_factorial(n, p))});
    }
    bool nilpotent = true;
    for (std::int64_t n = M / 2; n <= M; ++n)
        if (!(seq[n].is_zero() && seq[n].order() >= kInf)) nilpotent = false;
    if (nilpotent) return clip({region_r, region_r, true});

    auto br = growth_bracket(pts, M);
    RadiusBracket out;
    if (!br) {
        out.lower = LogRadius(apriori);
        out.upper = region_r;
    } else {
        out = *br;
        // radius >= omega / max(...) caps the exponents from above
        if (!out.lower.is_finite() || out.exp_hi() > apriori) out.lower = LogRadius(apriori);
        if (out.exp_lo() > apriori) out.upper = LogRadius(apriori);
    }
    return clip(out);
}

CompatibilityCertificate certify_deformation(const DiffSystem& sys, const DifferenceOperator& sigma,
                                             const std::vector<LogRadius>& sample, std::int64_t M) {
    std::vector<LogRadius> pts = sample.empty() ? sys.region.default_sample() : sample;
    std::vector<CertificatePoint> out;
    for (const auto& rho : pts) {
        RadiusBracket br = radius_at(sys, rho, M);
        out.push_back(classify_point(rho, sigma_radius_at(sigma, sys.region.center, rho), br));
    }
    return assemble_certificate(std::move(out), "differential");
}

namespace {

std::string describe(const CompatibilityCertificate& cert) {
    std::ostringstream os;
    os << "compatibility " << verdict_name(cert.verdict) << ":";
    for (const auto& pt : cert.points)
        os << " [rho=" << pt.point.to_string() << " R_sigma=" << pt.r_sigma.to_string() << " R_F in ["
           << pt.generic_lo.to_string() << "," << pt.generic_hi.to_string() << "] " << verdict_name(pt.verdict)
           << "]";
    return os.str();
}

bool all_below(const SeriesMatrix& m, std::int64_t N) {
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j)
            if (!m.at(i, j).with_precision(N).is_zero()) return false;
    return true;
}

std::optional<SeriesMatrix> deform_with(const SeriesMatrix& G, const Series& delta, std::int64_t M, std::int64_t N,
                                        std::int64_t L, bool finite_sum) {
    unsigned p = G.prime();
    std::int64_t Nw = N + vp_factorial(L, p) + 8;
    SeriesMatrix Gn = SeriesMatrix::identity(G.rank(), p, kInf, G.center());
    Series D = Series::constant(Padic::one(p), kInf, G.center());
    SeriesMatrix A = SeriesMatrix::identity(G.rank(), p, kInf, G.center()).truncated(M);
    int quiet = 0;
    for (std::int64_t n = 1; n <= L; ++n) {
        Gn = (Gn.derivative() + Gn * G).truncated(M + L - n);
        D = (D * delta).truncated(M).divided_by(Padic::from_integer(p, n), Nw);
        SeriesMatrix term = (Gn * D).truncated(M);
        A = A + term;
        if (!finite_sum) {
            quiet = all_below(term, N) ? quiet + 1 : 0;
            if (quiet >= 3 && n >= 8) return A.map([N](const Series& s) { return s.with_precision(N); });
        }
    }
    if (finite_sum) return A.map([N](const Series& s) { return s.with_precision(N); });
    return std::nullopt;
}

}  // namespace

SeriesMatrix deform(const DiffSystem& sys, const DifferenceOperator& sigma, std::int64_t M, std::int64_t N,
                    const CompatibilityCertificate& cert) {
    if (cert.verdict != Verdict::Compatible) fail(ErrorCode::Incompatible, "deform refused: " + describe(cert));
    require(M >= 0 && N >= 1, "deform: need M >= 0 and N >= 1");
    unsigned p = sys.prime();
    const Padic& c = sys.region.center;
    SeriesMatrix G = sys.G;
    Padic beta = sigma.delta_at(c);
    Series delta = Series::polynomial(p, {beta, sigma.q() - Padic::one(p)}, G.center());
    if (beta.is_zero()) {
        // delta^n vanishes below degree n, so the sum is finite mod T^(M+1)
        return *deform_with(G, delta, M, N, M, true);
    }
    for (std::int64_t L = 64; L <= 4096; L *= 2) {
        auto A = deform_with(G, delta, M, N, L, false);
        if (A) return *A;
    }
    fail(ErrorCode::Divergence, "deform: Taylor sum did not fall below p^N within 4096 terms");
}

}  // namespace padq
