#include "padq/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "padq/json_io.hpp"

namespace padq {

namespace {

// Pinned orders and bars. The p = 3 run for the functional equation needs M = 480: at M = 400 the
// tail bound on the dropped coefficients leaves only 27 digits of relative margin at T^150.
constexpr std::int64_t kResidualUpto = 150;
constexpr std::int64_t kResidualRelative = 30;
constexpr std::int64_t kOrderP3 = 480;
constexpr std::int64_t kOrderP5 = 250;
constexpr std::int64_t kOrderP7 = 100;
constexpr std::int64_t kRadiusOrder = 400;
constexpr std::int64_t kLTableDepth = 30;
constexpr std::int64_t kSumBar = 20;
constexpr std::int64_t kDeformOrder = 16;
constexpr std::int64_t kLimitBar = 6;
constexpr std::int64_t kGuardDigits = 16;  // extra digits carried by deform ahead of confluence
constexpr int kRandomSystems = 10;
constexpr int kRandomPolys = 100;
constexpr int kRandomModules = 20;
constexpr int kRandomProfiles = 20;

struct GammaRun {
    GammaSeries gs;
    G0Series g0;
};

class Suite {
public:
    explicit Suite(const AcceptanceParams& p) : P(p) {}

    const GammaRun& gamma(unsigned p) {
        auto& slot = p == 3 ? g3_ : g5_;
        if (!slot) {
            auto gs = gamma_taylor(p, p == 3 ? kOrderP3 : kOrderP5, P.N);
            auto g0 = g0_series(gs);
            slot = std::make_unique<GammaRun>(GammaRun{std::move(gs), std::move(g0)});
        }
        return *slot;
    }
    const LValueTable& table(unsigned p) {
        auto& slot = p == 3 ? t3_ : t5_;
        if (!slot) {
            const auto& g = gamma(p);
            slot = std::make_unique<LValueTable>(lvalues(g.gs, g.g0, kLTableDepth));
        }
        return *slot;
    }
    std::mt19937_64 rng(int id) const { return std::mt19937_64(P.seed * 1000003ULL + static_cast<unsigned>(id)); }

    const AcceptanceParams& P;

private:
    std::unique_ptr<GammaRun> g3_, g5_;
    std::unique_ptr<LValueTable> t3_, t5_;
};

long rand_in(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

Padic rand_int(std::mt19937_64& g, unsigned p, long lo, long hi) { return Padic::from_integer(p, rand_in(g, lo, hi)); }

Padic rand_unit(std::mt19937_64& g, unsigned p, long bound) {
    for (;;) {
        long u = rand_in(g, -bound, bound);
        if (u % static_cast<long>(p) != 0) return Padic::from_integer(p, u);
    }
}

Series rand_poly(std::mt19937_64& g, unsigned p, int max_deg, long bound, const Padic& center) {
    int deg = static_cast<int>(rand_in(g, 0, max_deg));
    std::vector<Padic> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rand_int(g, p, -bound, bound));
    return Series::polynomial(p, std::move(c), center);
}

bool series_equal(const Series& a, const Series& b) { return (a - b).is_exact_zero(); }

// Residual of Gamma^0(T + p) - A(1, p; T) Gamma^0(T) through T^150, relative to the scale of its terms.
CriterionResult c1(Suite& S) {
    CriterionResult r{1, "functional equation residual", true, "", 0};
    std::ostringstream os;
    for (unsigned p : {3u, 5u}) {
        const auto& g = S.gamma(p);
        auto fr = functional_residual(g.gs, 1, kResidualUpto);
        bool ok = fr.vanishes && fr.min_relative >= kResidualRelative;
        r.passed = r.passed && ok;
        os << "p=" << p << " M=" << g.gs.M << " upto T^" << fr.upto << " vanishes=" << fr.vanishes
           << " min relative precision " << fr.min_relative << " (need " << kResidualRelative << "); ";
    }
    r.detail = os.str();
    return r;
}

CriterionResult c2(Suite& S) {
    CriterionResult r{2, "Newton polygon wedges of g_0", true, "", 0};
    std::ostringstream os;
    struct Want {
        unsigned p;
        std::int64_t M;
        std::vector<std::pair<std::int64_t, long>> v;
    };
    std::vector<Want> wants{{3, S.P.M, {{2, -1}, {6, -2}, {18, -3}}},
                            {5, S.P.M, {{4, -1}, {20, -2}}},
                            {7, kOrderP7, {{6, -1}, {42, -2}}}};
    for (const auto& w : wants) {
        auto gs = gamma_taylor(w.p, w.M, S.P.N);
        auto np = newton_polygon(g0_series(gs).g0);
        os << "p=" << w.p << " M=" << w.M << ":";
        for (const auto& [n, v] : w.v) {
            bool has = np.has_vertex(n, mpq_class(v));
            r.passed = r.passed && has;
            os << " (" << n << "," << v << ")" << (has ? "" : " MISSING");
        }
        os << "; ";
    }
    r.detail = os.str();
    return r;
}

CriterionResult c3(Suite& S) {
    CriterionResult r{3, "L-value valuations", true, "", 0};
    std::ostringstream os;
    struct Want {
        unsigned p;
        std::int64_t m, v;
    };
    std::vector<Want> wants{{3, 1, -1}, {3, 3, -2}, {5, 2, -1}};
    for (const auto& w : wants) {
        const auto& t = S.table(w.p);
        const auto& e = t.entries.at(static_cast<std::size_t>(w.m - 1));
        bool ok = e.m == w.m && e.valuation && *e.valuation == w.v && e.routes_agree;
        r.passed = r.passed && ok;
        os << "v_" << w.p << "(L(" << 1 + 2 * w.m << ")) = " << (e.valuation ? std::to_string(*e.valuation) : "?")
           << (ok ? "" : " WRONG") << "; ";
    }
    for (unsigned p : {3u, 5u}) {
        int checked = 0, flagged = 0, bad = 0;
        for (const auto& e : S.table(p).entries) {
            if (!e.routes_agree) ++bad;
            if (e.flagged || !e.valuation) {
                ++flagged;
                continue;
            }
            ++checked;
            if (*e.valuation < e.bound) ++bad;
        }
        r.passed = r.passed && bad == 0;
        os << "p=" << p << ": " << checked << " valuations above bound, " << flagged << " flagged, " << bad
           << " violations; ";
    }
    r.detail = os.str();
    return r;
}

CriterionResult c4(Suite& S) {
    CriterionResult r{4, "radius of Gamma^0", false, "", 0};
    const auto& g = S.gamma(3);
    mpq_class target(5, 6);
    auto b400 = radius_estimate(g.gs.series.truncated(kRadiusOrder));
    auto b200 = radius_estimate(g.gs.series.truncated(kRadiusOrder / 2));
    mpq_class w400 = b400.exp_hi() - b400.exp_lo(), w200 = b200.exp_hi() - b200.exp_lo();
    bool contains = b400.contains_exponent(target) && b200.contains_exponent(target);
    bool narrow = w400 <= mpq_class(1, 20);
    bool tightens = w400 <= w200;
    r.passed = contains && narrow && tightens;
    std::ostringstream os;
    os << "M=" << kRadiusOrder << " bracket [" << b400.exp_lo().get_d() << ", " << b400.exp_hi().get_d()
       << "] width " << w400.get_d() << "; M=" << kRadiusOrder / 2 << " width " << w200.get_d()
       << "; contains 5/6: " << contains;
    r.detail = os.str();
    return r;
}

CriterionResult c5(Suite& S) {
    CriterionResult r{5, "Gauss norm of g_0 on [r_0, r_1]", true, "", 0};
    const auto& g = S.gamma(3);
    std::ostringstream os;
    for (const mpq_class& e : {mpq_class(1, 3), mpq_class(3, 10), mpq_class(1, 4)}) {
        auto gn = gauss_norm_estimate(g.g0.g0, LogRadius(e));
        mpq_class want = 2 * e - 1;
        bool ok = gn.certified && gn.norm.is_finite() && gn.norm.exp() == want;
        r.passed = r.passed && ok;
        os << "r=" << rational_string(e) << ": " << gn.norm.to_string() << " (want " << rational_string(want) << ")"
           << (gn.certified ? "" : " uncertified") << "; ";
    }
    r.detail = os.str();
    return r;
}

CriterionResult c6(Suite& S) {
    CriterionResult r{6, "sums of powers", true, "", 0};
    std::ostringstream os;
    const auto& g = S.gamma(5);
    const auto& t = S.table(5);
    for (std::int64_t ell = 1; ell <= 3; ++ell) {
        auto c = check_sum_identity(ell, 1, t, g.g0, S.P.N);
        bool ok = c.certified >= kSumBar;
        if (ell == 1) ok = ok && c.shortcut_certified && *c.shortcut_certified >= kSumBar;
        r.passed = r.passed && ok;
        os << "l=" << ell << ": certified " << c.certified;
        if (c.shortcut_certified) os << ", shortcut " << *c.shortcut_certified;
        os << "; ";
    }
    bool s1 = sum_powers_exact(1, 5, 5) == mpq_class(25, 12);
    bool s2 = sum_powers_exact(2, 5, 5) == mpq_class(205, 144);
    bool v1 = sum_powers(1, 5, 5, S.P.N).valuation() == 2 && sum_powers(2, 5, 5, S.P.N).valuation() == 1;
    r.passed = r.passed && s1 && s2 && v1;
    os << "S_1(5)=25/12 " << s1 << ", S_2(5)=205/144 " << s2 << ", valuations " << v1;
    r.detail = os.str();
    return r;
}

CriterionResult c7(Suite& S) {
    CriterionResult r{7, "deformation/confluence round trips", true, "", 0};
    std::ostringstream os;
    unsigned p = S.P.p;
    std::int64_t N = S.P.N;
    Padic one = Padic::one(p);
    mpz_class qm1 = mpz_class(p) * p;
    DifferenceOperator sigma(Padic::from_integer(p, qm1 + 1), Padic::zero(p));
    Region reg = Region::disc(Padic::zero(p), LogRadius::exponent(0));

    DiffSystem ex{SeriesMatrix::scalar(Series::constant(one)), reg};
    auto cert = certify_deformation(ex, sigma, {}, 40);
    SeriesMatrix A = deform(ex, sigma, kDeformOrder, N + kGuardDigits, cert);
    bool exp_ok = true;
    mpz_class pw = 1, fact = 1;
    for (std::int64_t n = 0; n <= kDeformOrder; ++n) {
        if (n > 0) {
            pw *= qm1;
            fact *= n;
        }
        Padic want = padic_from_rational(p, mpq_class(pw, fact), N);
        Padic got = A.at(0, 0).coeff(n);
        if (!(got.is_exact() || got.precision() >= N) || !got.agrees_with(want)) exp_ok = false;
    }
    DiffModule mod{A, sigma, reg};
    auto lim = confluent_connection(mod, kDeformOrder, ConfluenceMethod::Limit, {N, 8, 0});
    auto der = confluent_connection(mod, kDeformOrder, ConfluenceMethod::Derivative, {N, 8, 0});
    SeriesMatrix G1 = SeriesMatrix::scalar(Series::constant(one));
    bool lim_ok = lim.system.G.agrees_with(G1) && lim.precision >= kLimitBar;
    bool der_ok = der.system.G.agrees_with(G1) && der.precision >= N;
    os << "exp: A=exp((q-1)T) " << exp_ok << ", limit G=1 to p^" << lim.precision << " " << lim_ok
       << ", derivative G=1 to p^" << der.precision << " " << der_ok << "; ";
    r.passed = exp_ok && lim_ok && der_ok;

    auto g = S.rng(7);
    int done = 0, rejected = 0, fails = 0;
    std::int64_t worst = kInf;
    while (done < kRandomSystems && rejected < 200) {
        std::size_t rank = done < kRandomSystems / 2 ? 1 : 2;
        SeriesMatrix G = SeriesMatrix::zero(rank, p);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t k = 0; k < rank; ++k) G.at(i, k) = rand_poly(g, p, 2, 3, Padic::zero(p));
        DiffSystem sys{G, reg};
        auto c = certify_deformation(sys, sigma, {}, 40);
        if (c.verdict != Verdict::Compatible) {
            ++rejected;
            continue;
        }
        ++done;
        DiffModule m{deform(sys, sigma, kDeformOrder, N + kGuardDigits, c), sigma, reg};
        auto back = confluent_connection(m, kDeformOrder, ConfluenceMethod::Derivative, {N, 8, 0});
        worst = std::min(worst, back.precision);
        if (!back.system.G.agrees_with(G) || back.precision < N) ++fails;
    }
    bool rand_ok = done == kRandomSystems && fails == 0;
    r.passed = r.passed && rand_ok;
    os << done << " random systems (" << rejected << " resampled), " << fails << " mismatches, worst precision p^"
       << worst;
    r.detail = os.str();
    return r;
}

CriterionResult c8(Suite& S) {
    CriterionResult r{8, "twisted calculus properties", true, "", 0};
    unsigned p = S.P.p;
    auto g = S.rng(8);
    int leibniz = 0, divided = 0, roundtrip = 0, norms = 0, norm_checks = 0;
    const std::vector<mpq_class> radii{-2, -1, 0, mpq_class(1, 2), mpq_class(3, 4)};
    for (int i = 0; i < kRandomPolys; ++i) {
        Padic c = rand_int(g, p, -20, 20);
        DifferenceOperator sigma(Padic::one(p) + Padic::from_integer(p, rand_in(g, 1, long(p) * p)).shifted(1),
                                 rand_int(g, p, -9, 9).shifted(1));
        long bound = long(p) * p * p;
        Series f = rand_poly(g, p, 30, bound, c), h = rand_poly(g, p, 30, bound, c);
        Series lhs = twisted_derivative(f * h, sigma);
        Series rhs = compose_affine(f, sigma) * twisted_derivative(h, sigma) + twisted_derivative(f, sigma) * h;
        if (series_equal(lhs, rhs)) ++leibniz;
        // sigma(f) - f = ((q-1)T + h) d(f), with no division performed
        Series delta = Series::polynomial(p, {sigma.delta_at(c), sigma.q() - Padic::one(p)}, c);
        if (series_equal(compose_affine(f, sigma) - f, delta * twisted_derivative(f, sigma))) ++divided;
        auto a = to_twisted_basis(f, sigma);
        if (series_equal(from_twisted_basis(a, sigma, c), f)) ++roundtrip;
        for (const auto& e : radii) {
            ++norm_checks;
            LogRadius direct = gauss_norm(f, LogRadius(e));
            LogRadius twisted = LogRadius::zero_radius();
            for (std::size_t n = 0; n < a.size(); ++n)
                if (!a[n].is_zero())
                    twisted = max_radius(twisted, LogRadius(mpq_class(a[n].valuation()) + e * long(n)));
            if (direct == twisted) ++norms;
        }
    }
    r.passed = leibniz == kRandomPolys && divided == kRandomPolys && roundtrip == kRandomPolys && norms == norm_checks;
    std::ostringstream os;
    os << "Leibniz " << leibniz << "/" << kRandomPolys << ", divided difference " << divided << "/" << kRandomPolys
       << ", round trip " << roundtrip << "/" << kRandomPolys << ", norm invariance " << norms << "/" << norm_checks;
    r.detail = os.str();
    return r;
}

CriterionResult c9(Suite& S) {
    CriterionResult r{9, "small-radius closed form", true, "", 0};
    unsigned p = S.P.p;
    auto g = S.rng(9);
    // sequence length p^j: the chord test then sees the full v(n!) drop at n = p^j
    std::int64_t Mseq = p;
    while (Mseq * p <= 60) Mseq *= p;
    if (Mseq < 9) Mseq = static_cast<std::int64_t>(p) * p;
    int collapsed = 0, contained = 0;
    Region reg = Region::disc(Padic::zero(p), LogRadius::exponent(0));
    for (int i = 0; i < kRandomModules; ++i) {
        DifferenceOperator sigma(Padic::one(p) + rand_unit(g, p, 20).shifted(rand_in(g, 1, 2)),
                                 rand_int(g, p, -9, 9).shifted(1));
        long k = rand_in(g, 1, 3);
        Padic g1 = rand_unit(g, p, 50).shifted(-k);
        Series delta = Series::polynomial(p, {sigma.h(), sigma.q() - Padic::one(p)});
        DiffModule mod{SeriesMatrix::scalar(Series::constant(Padic::one(p)) + delta * g1), sigma, reg};
        LogRadius rho = LogRadius::exponent(i % 2, 2);
        LogRadius closed = LogRadius(omega_q(make_qcontext(sigma.q(), sigma.h())).exp() + k);
        auto b = generic_radius(mod, rho, Mseq);
        if (b.exact && b.lower == closed && b.upper == closed) ++collapsed;
        auto lim = generic_radius(mod, rho, Mseq, true);
        if (lim.contains(closed)) ++contained;
    }
    r.passed = collapsed == kRandomModules && contained == kRandomModules;
    std::ostringstream os;
    os << "closed form hit exactly " << collapsed << "/" << kRandomModules << ", liminf bracket (M=" << Mseq
       << ") contains it " << contained << "/" << kRandomModules;
    r.detail = os.str();
    return r;
}

CriterionResult c10(Suite& S) {
    CriterionResult r{10, "radius profiles and controlling graph", true, "", 0};
    unsigned p = S.P.p;
    auto g = S.rng(10);
    int good_profiles = 0, good_endpoints = 0;
    for (int i = 0; i < kRandomProfiles; ++i) {
        Padic q = Padic::one(p) + rand_unit(g, p, 20).shifted(rand_in(g, 1, 3));
        Padic h = i % 5 == 0 ? Padic::zero(p) : rand_int(g, p, -30, 30).shifted(rand_in(g, 0, 3));
        DifferenceOperator sigma(q, h);
        Padic c = rand_int(g, p, -30, 30);
        auto prof = sigma_radius_profile(sigma, c, LogRadius::exponent(-2), LogRadius::exponent(6));
        Series delta = recenter(Series::polynomial(p, {h, q - Padic::one(p)}), c);
        bool ok = !prof.pieces.empty();
        for (std::size_t k = 0; ok && k < prof.pieces.size(); ++k) {
            const auto& pc = prof.pieces[k];
            mpq_class mid = (pc.from + pc.to) / 2;
            for (const auto& x : {pc.from, mid, pc.to})
                ok = ok && prof.at(x) == gauss_norm(delta, LogRadius(x)) && LogRadius(pc.at(x)) == prof.at(x);
            mpq_class slope = (pc.at(mid) - pc.at(pc.from)) / (mid - pc.from);
            ok = ok && slope.get_den() == 1 && slope == pc.beta;
            if (k + 1 < prof.pieces.size()) {
                const auto& nx = prof.pieces[k + 1];
                ok = ok && nx.from == pc.to && nx.at(nx.from) == pc.at(pc.to) && nx.beta <= pc.beta;
            }
        }
        auto a = controlling_graph_endpoint(sigma, S.P.N);
        bool ep = a.has_value();
        if (ep) {
            mpq_class want = -h.to_rational() / (q - Padic::one(p)).to_rational();
            ep = a->agrees_with(padic_from_rational(p, want, S.P.N)) && sigma.delta_at(*a).is_zero() &&
                 a->precision() >= S.P.N - 3;
            // Laplacian at each break equals the zeros of delta on the sphere |T - c| = rho
            for (const auto& b : prof.breakpoints()) {
                Padic d = *a - c;
                long zeros = !d.is_zero() && mpq_class(d.valuation()) == b ? 1 : 0;
                ok = ok && profile_laplacian(prof, b) == zeros;
            }
            ok = ok && profile_laplacian(prof, mpq_class(-3, 2)) == 0;
        }
        if (ok) ++good_profiles;
        if (ep) ++good_endpoints;
    }
    r.passed = good_profiles == kRandomProfiles && good_endpoints == kRandomProfiles;
    std::ostringstream os;
    os << "profiles matching direct Gauss norms with integer slopes, continuity and convexity " << good_profiles << "/"
       << kRandomProfiles << ", endpoint -h/(q-1) " << good_endpoints << "/" << kRandomProfiles;
    r.detail = os.str();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceParams& params,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    using Fn = CriterionResult (*)(Suite&);
    const Fn fns[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    const char* names[] = {"functional equation residual",
                           "Newton polygon wedges of g_0",
                           "L-value valuations",
                           "radius of Gamma^0",
                           "Gauss norm of g_0 on [r_0, r_1]",
                           "sums of powers",
                           "deformation/confluence round trips",
                           "twisted calculus properties",
                           "small-radius closed form",
                           "radius profiles and controlling graph"};
    Suite suite(params);
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 10; ++id) {
        if (!params.only.empty() && std::find(params.only.begin(), params.only.end(), id) == params.only.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = fns[id - 1](suite);
        } catch (const Error& e) {
            res = {id, names[id - 1], false, std::string(error_code_name(e.code())) + ": " + e.what(), 0};
        } catch (const std::exception& e) {
            res = {id, names[id - 1], false, std::string("exception: ") + e.what(), 0};
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_result) on_result(res);
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace padq
