#include "padq/confluence.hpp"

#include "padq/qcalc.hpp"

namespace padq {

namespace {

// f / (beta + gamma u), u = T - c.
Series divide_linear(const Series& f, const Padic& beta, const Padic& gamma, std::int64_t Nw) {
    unsigned p = f.prime();
    require(f.min_index() >= 0, "division by delta needs a power series");
    if (gamma.is_zero()) return f.divided_by(beta, Nw);
    std::int64_t d = f.max_index();
    if (f.is_polynomial()) {
        if (d < 0) return f;
        std::vector<Padic> b(static_cast<std::size_t>(std::max<std::int64_t>(d, 0)), Padic::zero(p));
        Padic carry = Padic::zero(p);
        for (std::int64_t k = d; k >= 1; --k) {
            carry = Padic::divide(f.coeff(k) - (k < d ? beta * b[k] : Padic::zero(p)), gamma, Nw);
            b[k - 1] = carry;
        }
        Padic rem = f.coeff(0) - (d >= 1 ? beta * b[0] : Padic::zero(p));
        if (!rem.is_zero())
            fail(ErrorCode::MalformedModule,
                 "nonzero remainder " + rem.to_string() + " dividing by (q-1)T + h: A is not Id at the fixed point");
        return Series(p, std::move(b), kInf, f.center());
    }
    std::int64_t M = f.order();
    if (beta.is_zero()) {
        if (!f.coeff(0).is_zero())
            fail(ErrorCode::MalformedModule, "constant term " + f.coeff(0).to_string() +
                                                 " must vanish: the region holds the fixed point of sigma");
        std::vector<Padic> b;
        for (std::int64_t n = 1; n <= M; ++n) b.push_back(Padic::divide(f.coeff(n), gamma, Nw));
        return Series(p, std::move(b), M - 1, f.center());
    }
    std::vector<Padic> b;
    Padic prev = Padic::zero(p);
    for (std::int64_t n = 0; n <= M; ++n) {
        prev = Padic::divide(f.coeff(n) - gamma * prev, beta, Nw);
        b.push_back(prev);
    }
    return Series(p, std::move(b), M, f.center());
}

SeriesMatrix divide_matrix(const SeriesMatrix& m, const DifferenceOperator& sigma, std::int64_t Nw) {
    return m.map([&](const Series& s) { return divide_by_delta(s, sigma, Nw); });
}

// f(qT + h) for a truncated f. A moving center drags the dropped a_j (j > M) into every coefficient:
// their share C(j,k) q^k d^{j-k} a_j is bounded with the tail model and caps the precision of T^k.
Series compose_with_tail(const Series& f, const DifferenceOperator& sigma) {
    Series g = compose_affine(f, sigma);
    Padic d = sigma.delta_at(f.center());
    if (f.is_polynomial() || d.is_exact_zero()) return g;
    auto tm = tail_model(f);
    if (!tm) return g;  // too short to model; the known part is all there is
    std::int64_t vd = d.is_zero() ? d.precision() : d.valuation();
    std::int64_t M = f.order();
    if (tm->slope + vd <= 0) fail(ErrorCode::Uncertified, "truncated tail dominates f(qT + h)");
    std::vector<Padic> c;
    for (std::int64_t k = 0; k <= g.max_index(); ++k) {
        mpq_class b = tm->bound(M + 1) + mpq_class((M + 1 - k) * vd);
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
        c.push_back(g.coeff(k).with_precision(fl.get_si()));
    }
    return Series(f.prime(), std::move(c), M, f.center());
}

SeriesMatrix compose_matrix(const SeriesMatrix& m, const DifferenceOperator& sigma) {
    return m.map([&](const Series& s) { return compose_with_tail(s, sigma); });
}

constexpr std::int64_t kMaxExactDegree = 2000;

std::int64_t max_degree(const SeriesMatrix& m) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j) d = std::max(d, m.at(i, j).max_index());
    return d;
}

// smallest absolute precision at which the two matrices are seen to agree
std::int64_t agreement(const SeriesMatrix& x, const SeriesMatrix& y) {
    std::int64_t best = kInf;
    std::int64_t top = std::min(x.order(), y.order());
    for (std::size_t i = 0; i < x.rank(); ++i)
        for (std::size_t j = 0; j < x.rank(); ++j) {
            const Series& a = x.at(i, j);
            const Series& b = y.at(i, j);
            std::int64_t hi = std::max(a.max_index(), b.max_index());
            if (top < kInf) hi = std::min(hi, top);
            for (std::int64_t n = 0; n <= hi; ++n) {
                Padic d = a.coeff(n) - b.coeff(n);
                best = std::min(best, d.is_zero() ? d.precision() : d.valuation());
            }
        }
    return best;
}

std::int64_t delta_valuation(const DifferenceOperator& sigma, const Padic& c) {
    unsigned p = sigma.prime();
    Padic qm1 = sigma.q() - Padic::one(p), b = sigma.delta_at(c);
    std::int64_t v = kInf;
    if (!qm1.is_zero()) v = qm1.valuation();
    if (!b.is_zero()) v = std::min(v, b.valuation());
    return v;
}

SeriesMatrix cap_precision(const SeriesMatrix& m, std::int64_t N) {
    return m.map([N](const Series& s) { return s.with_precision(N); });
}

}  // namespace

Series divide_by_delta(const Series& f, const DifferenceOperator& sigma, std::int64_t N_if_inexact) {
    unsigned p = sigma.prime();
    if (sigma.is_identity()) fail(ErrorCode::DivisionByZero, "delta vanishes for the identity operator");
    return divide_linear(f, sigma.delta_at(f.center()), sigma.q() - Padic::one(p), N_if_inexact);
}

Series d_qh(const Series& f, const DifferenceOperator& sigma, std::int64_t N_if_inexact) {
    return divide_by_delta(compose_with_tail(f, sigma) - f, sigma, N_if_inexact);
}

StratSequence twisted_strat_sequence(const DiffModule& mod, std::int64_t M) {
    require(M >= 0, "twisted_strat_sequence: M must be non-negative");
    const auto& s = mod.sigma;
    std::size_t r = mod.rank();
    unsigned p = mod.prime();
    std::int64_t Nw = std::max<std::int64_t>(mod.A.min_precision() < kInf ? mod.A.min_precision() : 0, 0) + 64;
    SeriesMatrix Id = SeriesMatrix::identity(r, p, kInf, mod.A.center());
    StratSequence seq{Id};
    if (M == 0) return seq;
    SeriesMatrix G1 = divide_matrix(mod.A - Id, s, Nw);
    seq.push_back(G1);
    for (std::int64_t n = 1; n < M; ++n) {
        const SeriesMatrix& Gn = seq.back();
        if (Gn.order() < kInf && Gn.order() <= 0) break;  // truncation exhausted
        seq.push_back(compose_matrix(Gn, s) * G1 + Gn.map([&](const Series& x) { return d_qh(x, s, Nw); }));
    }
    return seq;
}

RadiusBracket generic_radius(const DiffModule& mod, const LogRadius& rho, std::int64_t M, bool liminf_only) {
    unsigned p = mod.prime();
    require(mod.region.admits(rho), "generic_radius: point x_{c,rho} lies outside the region");
    require(rho.is_finite(), "generic_radius: rho must be a finite positive radius");
    const mpq_class& r = rho.exp();
    LogRadius region_r = mod.region.disc_radius_at(rho);
    auto clip = [&](RadiusBracket br) {
        br.lower = min_radius(br.lower, region_r);
        br.upper = min_radius(br.upper, region_r);
        br.exact = br.lower == br.upper;
        return br;
    };
    QContext ctx = make_qcontext(mod.sigma.q(), mod.sigma.h());
    mpq_class wq = omega_q(ctx).exp();

    StratSequence seq = twisted_strat_sequence(mod, std::min<std::int64_t>(M, 1));
    if (seq.size() < 2 || seq[1].is_zero()) return clip({region_r, region_r, true});
    GaussNormResult g1 = gauss_norm_estimate(seq[1], rho);
    mpq_class apriori = wq - std::min(mpq_class(-r), g1.norm.exp());
    if (!liminf_only && mod.rank() == 1 && g1.certified && g1.norm.exp() < -r) {
        LogRadius R(apriori);
        return clip({R, R, true});
    }

    seq = twisted_strat_sequence(mod, M);
    M = static_cast<std::int64_t>(seq.size()) - 1;
    Padic qm1 = mod.sigma.q() - Padic::one(p);
    std::int64_t vq = qm1.is_zero() ? 0 : qm1.valuation();
    std::vector<HullPoint> pts;
    std::int64_t vfact = 0;
    Padic qn = Padic::one(p);
    for (std::int64_t n = 0; n <= M; ++n) {
        if (n > 0) {
            // v([n]_q) = v(q^n - 1) - v(q - 1), or v(n) when q = 1
            if (qm1.is_zero()) {
                vfact += vp(mpz_class(n), p);
            } else {
                qn = qn * mod.sigma.q();
                Padic d = qn - Padic::one(p);
                vfact += (d.is_zero() ? d.precision() : d.valuation()) - vq;
            }
        }
        GaussNormResult gn = gauss_norm_estimate(seq[n], rho);
        if (!gn.norm.is_finite()) continue;
        pts.push_back({n, gn.norm.exp() - mpq_class(vfact)});
    }
    bool nilpotent = true;
    for (std::int64_t n = M / 2; n <= M; ++n)
        if (!(seq[n].is_zero() && seq[n].order() >= kInf)) nilpotent = false;
    if (nilpotent) return clip({region_r, region_r, true});

    auto br = growth_bracket(pts, M);
    if (liminf_only) {
        if (!br) fail(ErrorCode::Uncertified, "generic_radius: too few terms for a liminf bracket");
        return clip(*br);
    }
    RadiusBracket out;
    if (!br) {
        out.lower = LogRadius(apriori);
        out.upper = region_r;
    } else {
        out = *br;
        if (!out.lower.is_finite() || out.exp_hi() > apriori) out.lower = LogRadius(apriori);
        if (out.exp_lo() > apriori) out.upper = LogRadius(apriori);
    }
    return clip(out);
}

CompatibilityCertificate compatible(const DiffModule& mod, const std::vector<LogRadius>& sample, std::int64_t M) {
    std::vector<LogRadius> pts = sample.empty() ? mod.region.default_sample() : sample;
    std::vector<CertificatePoint> out;
    for (const auto& rho : pts)
        out.push_back(classify_point(rho, sigma_radius_at(mod.sigma, mod.region.center, rho),
                                     generic_radius(mod, rho, M)));
    return assemble_certificate(std::move(out), "difference");
}

bool nondegenerate(const DifferenceOperator& sigma) {
    if (sigma.q_is_one()) return !sigma.h().is_zero();
    return !is_root_of_unity(sigma.q());
}

SeriesMatrix iterate_module(const SeriesMatrix& A, const DifferenceOperator& sigma, std::uint64_t k) {
    SeriesMatrix Ak = SeriesMatrix::identity(A.rank(), A.prime(), kInf, A.center());
    for (std::uint64_t j = 0; j < k; ++j) Ak = compose_matrix(Ak, sigma) * A;
    return Ak.truncated(A.order());
}

namespace {

ConfluenceResult confluence_limit(const DiffModule& mod, std::int64_t M, const ConfluenceOptions& opt) {
    unsigned p = mod.prime();
    std::size_t r = mod.rank();
    // polynomial modules iterate exactly; truncating them would invent a tail
    const bool exact = mod.A.order() >= kInf;
    SeriesMatrix A = exact ? mod.A : mod.A.truncated(M);
    SeriesMatrix Id = SeriesMatrix::identity(r, p, kInf, A.center());
    std::int64_t Nw = opt.N + 64;
    DifferenceOperator tau = mod.sigma;
    SeriesMatrix B = A;
    SeriesMatrix prev = divide_matrix(B - Id, tau, Nw).truncated(M);
    ConfluenceResult res;
    res.method = "limit";
    for (int n = 1; n <= opt.n_max; ++n) {
        if (exact && max_degree(B) * static_cast<std::int64_t>(p) > kMaxExactDegree)
            fail(ErrorCode::ResourceLimit, "limit confluence: exact iterate degree exceeds " +
                                               std::to_string(kMaxExactDegree) + " at level " + std::to_string(n));
        B = iterate_module(B, tau, p);
        tau = tau.power(p);
        SeriesMatrix cur = divide_matrix(B - Id, tau, Nw).truncated(M);
        std::int64_t ag = agreement(cur, prev);
        res.agreement.push_back(ag);
        res.levels = n;
        prev = cur;
        bool growing = res.agreement.size() < 2 || ag > res.agreement[res.agreement.size() - 2];
        if (ag >= opt.N && growing) break;
    }
    std::size_t k = res.agreement.size();
    if (k >= 2 && res.agreement[k - 1] <= res.agreement[k - 2] && res.agreement[k - 1] < opt.N)
        fail(ErrorCode::Divergence, "limit confluence: agreement stopped growing at level " + std::to_string(k) +
                                        " (precision " + std::to_string(res.agreement[k - 1]) + ")");
    res.precision = std::min<std::int64_t>(opt.N, res.agreement.back());
    res.precision = std::min(res.precision, prev.min_precision());
    res.system.G = cap_precision(prev, res.precision);
    res.system.region = mod.region;
    return res;
}

ConfluenceResult confluence_derivative(const DiffModule& mod, std::int64_t M, const ConfluenceOptions& opt) {
    unsigned p = mod.prime();
    std::size_t r = mod.rank();
    const auto& s = mod.sigma;
    const bool exact = mod.A.order() >= kInf;
    SeriesMatrix A = exact ? mod.A : mod.A.truncated(M);
    std::int64_t vd = delta_valuation(s, A.center());
    std::int64_t Nw = opt.N + vd + 64;
    std::int64_t target = opt.N + vd + 2;
    std::int64_t cap = opt.terms > 0 ? opt.terms : 600;
    ConfluenceResult res;
    res.method = "derivative";
    // orbit values f(i) = A_{sigma^i}
    // orbit values f(i) = A_{sigma^i}; 'orbit' is the untruncated last value for polynomial modules
    SeriesMatrix orbit = SeriesMatrix::identity(r, p, kInf, A.center());
    std::vector<SeriesMatrix> f{orbit.truncated(M)};
    SeriesMatrix D = SeriesMatrix::zero(r, p, kInf, A.center()).truncated(M);
    int quiet = 0;
    for (std::int64_t j = 1; j <= cap; ++j) {
        if (exact && max_degree(orbit) > kMaxExactDegree)
            fail(ErrorCode::ResourceLimit, "derivative confluence: exact orbit degree exceeds " +
                                               std::to_string(kMaxExactDegree));
        orbit = compose_matrix(exact ? orbit : f.back(), s) * A;
        f.push_back(orbit.truncated(M));
        // Delta^j f(0) = sum_i C(j,i) (-1)^{j-i} f(i)
        SeriesMatrix dj = SeriesMatrix::zero(r, p, kInf, A.center()).truncated(M);
        mpz_class c = 1;
        for (std::int64_t i = 0; i <= j; ++i) {
            mpz_class sgn = ((j - i) % 2) ? -c : c;
            dj = dj + f[i] * Padic::from_integer(p, sgn);
            c = c * (j - i) / (i + 1);
        }
        Padic jj = Padic::from_integer(p, (j % 2) ? j : -j);
        SeriesMatrix term = dj.map([&](const Series& x) { return x.divided_by(jj, Nw); });
        D = D + term;
        std::int64_t tv = agreement(term, SeriesMatrix::zero(r, p, kInf, A.center()));
        res.agreement.push_back(tv);
        res.levels = static_cast<int>(j);
        // a term known only as zero to its own precision is as small as the input can certify
        quiet = tv >= target || term.is_zero() ? quiet + 1 : 0;
        if (opt.terms > 0 ? j == opt.terms : quiet >= 3) break;
        if (j == cap) fail(ErrorCode::Divergence, "derivative confluence: orbit differences did not decay");
    }
    // d/dt sigma^t(T) at t = 0 is (aT + b) = lambda ((q-1)T + h) with lambda = (q-1)/log q, or 1 when q = 1
    SeriesMatrix G = divide_matrix(D, s, Nw);
    if (!s.q_is_one()) {
        Padic qm1 = s.q() - Padic::one(p);
        Padic lambda = Padic::divide(qm1, scalar_log(s.q(), Nw), Nw);
        G = G * lambda;
    }
    res.precision = std::min(opt.N, G.min_precision());
    res.system.G = cap_precision(G, res.precision);
    res.system.region = mod.region;
    return res;
}

}  // namespace

ConfluenceResult confluent_connection(const DiffModule& mod, std::int64_t M, ConfluenceMethod method,
                                      const ConfluenceOptions& opt) {
    require(!mod.sigma.is_identity(), "confluence needs a non-identity sigma");
    require(nondegenerate(mod.sigma), "confluence needs a nondegenerate sigma");
    return method == ConfluenceMethod::Limit ? confluence_limit(mod, M, opt) : confluence_derivative(mod, M, opt);
}

FirstOrderFamily first_order_family(const DiffSystem& sys) {
    // deform with q = 1 + a e, h = b e, e^2 = 0: A = Id + e (aT + b) G
    unsigned p = sys.prime();
    const Padic& c = sys.G.center();
    Series T = Series::polynomial(p, {c, Padic::one(p)}, c);
    return {sys.G * T, sys.G};
}

SeriesMatrix connection_from_family(const FirstOrderFamily& fam, const Padic& a, const Padic& b,
                                    std::int64_t N_if_inexact) {
    require(!(a.is_zero() && b.is_zero()), "connection_from_family: (a, b) must be nonzero");
    SeriesMatrix num = fam.dq * a + fam.dh * b;
    const Padic& c = fam.dh.center();
    return num.map([&](const Series& f) { return divide_linear(f, a * c + b, a, N_if_inexact); });
}

}  // namespace padq
