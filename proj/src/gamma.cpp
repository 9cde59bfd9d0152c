#include "padq/gamma.hpp"

#include <algorithm>

namespace padq {

mpz_class gamma_at(std::uint64_t n, unsigned p) {
    require(p >= 3, "gamma_at needs p >= 3");
    mpz_class prod = 1;
    for (std::uint64_t i = 1; i < n; ++i)
        if (i % p) prod *= static_cast<unsigned long>(i);
    return (n % 2) ? mpz_class(-prod) : prod;
}

namespace {

struct NewtonRun {
    std::vector<mpz_class> Q;  // p^S * gamma_n * p^n mod p^W
    std::int64_t S = 0;
    std::int64_t W = 0;
};

// Newton series of j -> Gamma_p(jp) on K+1 nodes, expanded in t = T/p modulo p^W.
NewtonRun newton_run(unsigned p, std::int64_t K, std::int64_t M, std::int64_t W) {
    NewtonRun run;
    run.S = vp_factorial(static_cast<std::uint64_t>(K), p);
    run.W = W;
    const mpz_class& mod = ppow(p, W);
    std::vector<mpz_class> row(K + 1);
    mpz_class prod = 1;
    for (std::int64_t j = 0; j <= K; ++j) {
        std::int64_t n = j * static_cast<std::int64_t>(p);
        row[j] = (n % 2) ? mpz_class(mod - prod) : prod;
        if (row[j] == mod) row[j] = 0;
        for (std::int64_t i = n; i < n + static_cast<std::int64_t>(p); ++i)
            if (i % p) {
                prod *= static_cast<unsigned long>(i);
                mpz_mod(prod.get_mpz_t(), prod.get_mpz_t(), mod.get_mpz_t());
            }
    }
    // forward differences a_k = Delta^k f(0)
    std::vector<mpz_class> a(K + 1);
    for (std::int64_t k = 0; k <= K; ++k) {
        a[k] = row[0];
        for (std::int64_t i = 0; i + 1 < static_cast<std::int64_t>(row.size()) - k; ++i) {
            row[i] = row[i + 1] - row[i];
            if (row[i] < 0) row[i] += mod;
        }
    }
    // B_k = a_k / k! * p^S, with k! = u p^e
    std::vector<mpz_class> B(K + 1);
    mpz_class u = 1;
    std::int64_t e = 0;
    for (std::int64_t k = 0; k <= K; ++k) {
        if (k > 0) {
            std::int64_t kk = k;
            while (kk % p == 0) {
                kk /= p;
                ++e;
            }
            u *= static_cast<unsigned long>(kk);
            mpz_mod(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
        }
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
        B[k] = a[k] * inv * ppow(p, run.S - e);
        mpz_mod(B[k].get_mpz_t(), B[k].get_mpz_t(), mod.get_mpz_t());
    }
    // Horner in the Newton basis: Q <- B_k + (t - k) Q, truncated at t^M
    std::vector<mpz_class> Q(M + 1, 0), next(M + 1);
    for (std::int64_t k = K; k >= 0; --k) {
        for (std::int64_t i = 0; i <= M; ++i) {
            next[i] = -k * Q[i];
            if (i > 0) next[i] += Q[i - 1];
        }
        next[0] += B[k];
        for (std::int64_t i = 0; i <= M; ++i) mpz_mod(Q[i].get_mpz_t(), next[i].get_mpz_t(), mod.get_mpz_t());
    }
    run.Q = std::move(Q);
    return run;
}

Padic coefficient_from_run(const NewtonRun& run, unsigned p, std::int64_t n) {
    std::int64_t N = run.W - run.S - n;
    const mpz_class& q = run.Q[n];
    if (q == 0) return Padic::zero(p, N);
    std::int64_t v = vp(q, p);
    mpz_class m = q / ppow(p, v);
    return Padic::from_parts(p, v - run.S - n, m, N);
}

std::int64_t node_count(unsigned p, std::int64_t M, std::int64_t N) {
    // Delta^k f(0)/k! decays like p^{-k rate}; gamma_n needs the dropped terms below p^{N+n}
    mpq_class rate = mpq_class(1) - mpq_class(1, p - 1) - mpq_class(1, p);
    mpq_class need = mpq_class(N + M + 16) / rate;
    mpz_class c = need.get_num() / need.get_den() + 1;
    return c.get_si();
}

std::int64_t precision_of(const Padic& x) { return x.is_exact() ? kInf : x.precision(); }

std::int64_t residual_digits(const Padic& x) { return x.is_zero() ? x.precision() : x.valuation(); }

}  // namespace

GammaSeries gamma_taylor(unsigned p, std::int64_t M, std::int64_t N, const GammaLimits& lim) {
    require(p >= 3, "gamma_taylor needs p >= 3");
    require(M >= 1 && N >= 1, "gamma_taylor needs M >= 1 and N >= 1");
    if (M > lim.max_order || N > lim.max_prec)
        fail(ErrorCode::ResourceLimit, "gamma_taylor: order/precision beyond configured limits");
    GammaSeries gs;
    gs.p = p;
    gs.M = M;
    gs.N = N;
    std::int64_t K1 = node_count(p, M, N);
    std::int64_t K2 = 2 * K1;
    std::int64_t margin = 32;
    NewtonRun r1 = newton_run(p, K1, M, vp_factorial(K1, p) + M + N + margin);
    NewtonRun r2 = newton_run(p, K2, M, vp_factorial(K2, p) + M + N + margin);
    gs.nodes = K1;
    gs.check_nodes = K2;
    gs.work_digits = r2.W;
    std::vector<Padic> c;
    std::int64_t min_abs = kInf;
    for (std::int64_t n = 0; n <= M; ++n) {
        Padic g1 = coefficient_from_run(r1, p, n);
        Padic g2 = coefficient_from_run(r2, p, n);
        std::int64_t agree = residual_digits(g1 - g2);
        Padic g = g2.with_precision(std::min(agree, g2.precision()));
        if (n == 0) {
            require(g.agrees_with(Padic::one(p)), "gamma_taylor: constant term is not 1");
            g = Padic::one(p);
        } else {
            min_abs = std::min(min_abs, g.precision());
        }
        c.push_back(g);
    }
    gs.series = Series(p, std::move(c), M);
    gs.min_precision = min_abs;
    if (min_abs < N)
        fail(ErrorCode::Certification, "gamma_taylor: doubling check certified only " + std::to_string(min_abs) +
                                           " digits (target " + std::to_string(N) + ")");
    return gs;
}

std::int64_t g0_coefficient_bound(std::int64_t k, unsigned p) {
    if (k <= static_cast<std::int64_t>(p) - 2) return 0;
    std::int64_t n = 1;
    std::int64_t lo = p - 1;
    while (k >= lo * static_cast<std::int64_t>(p)) {
        lo *= p;
        ++n;
    }
    return -n;
}

G0Series g0_series(const GammaSeries& gs) {
    const Series& G = gs.series;
    unsigned p = gs.p;
    std::int64_t Nw = 0;
    for (const auto& c : G.coeffs()) Nw = std::max(Nw, precision_of(c) < kInf ? precision_of(c) : 0);
    Nw += gs.M + 64;
    G0Series out;
    Series q = Series::divide(G.derivative(), G, G.order() - 1, Nw);
    std::int64_t keep = q.order();
    for (std::int64_t k = 0; k <= q.order(); ++k) {
        const Padic& a = q.coeff(k);
        if (precision_of(a) <= g0_coefficient_bound(k, p)) {
            keep = k - 1;
            break;
        }
    }
    out.g0 = keep < q.order() ? q.truncated(keep) : q;
    out.trimmed_at = out.g0.order();
    for (std::int64_t k = 1; k <= out.g0.order(); k += 2)
        if (!out.g0.coeff(k).is_zero()) out.odd_nonzero.push_back(k);
    return out;
}

LValueTable lvalues(const GammaSeries& gs, std::int64_t m_max) { return lvalues(gs, g0_series(gs), m_max); }

LValueTable lvalues(const GammaSeries& gs, const G0Series& g0, std::int64_t m_max) {
    unsigned p = gs.p;
    require(m_max >= 0, "lvalues: m_max must be non-negative");
    require(2 * m_max < g0.g0.order() && 2 * m_max + 1 <= gs.M, "lvalues: need 2 m_max < M");
    std::int64_t Nw = 0;
    for (const auto& c : gs.series.coeffs()) Nw = std::max(Nw, precision_of(c) < kInf ? precision_of(c) : 0);
    Nw += gs.M + 64;
    Series lg = series_log(gs.series.truncated(2 * m_max + 1), Nw);
    LValueTable t;
    t.p = p;
    t.lambda0 = g0.g0.coeff(0);
    for (std::int64_t m = 1; m <= m_max; ++m) {
        LValueEntry e;
        e.m = m;
        e.value = -g0.g0.coeff(2 * m);
        e.value_from_log = -(Padic::from_integer(p, 1 + 2 * m) * lg.coeff(1 + 2 * m));
        e.routes_agree = (e.value - e.value_from_log).is_zero();
        e.bound = g0_coefficient_bound(2 * m, p);
        if (e.value.is_zero()) {
            e.flagged = true;
        } else {
            e.valuation = e.value.valuation();
        }
        t.entries.push_back(e);
    }
    return t;
}

mpq_class sum_powers_exact(std::int64_t ell, std::int64_t k, unsigned p) {
    require(ell >= 1 && k >= 1, "sum_powers needs ell >= 1 and k >= 1");
    mpq_class s = 0;
    for (std::int64_t i = 1; i < k; ++i) {
        if (i % p == 0) continue;
        mpz_class d;
        mpz_pow_ui(d.get_mpz_t(), mpz_class(static_cast<long>(i)).get_mpz_t(), static_cast<unsigned long>(ell));
        s += mpq_class(1, d);
    }
    s.canonicalize();
    return s;
}

Padic sum_powers(std::int64_t ell, std::int64_t k, unsigned p, std::int64_t N) {
    require(ell >= 1 && k >= 1, "sum_powers needs ell >= 1 and k >= 1");
    require(N >= 1, "sum_powers needs N >= 1");
    const mpz_class& mod = ppow(p, N);
    mpz_class acc = 0;
    for (std::int64_t i = 1; i < k; ++i) {
        if (i % p == 0) continue;
        mpz_class inv, base(static_cast<long>(i));
        mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), mod.get_mpz_t());
        mpz_powm_ui(inv.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(ell), mod.get_mpz_t());
        acc += inv;
    }
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    if (acc == 0) return Padic::zero(p, N);
    std::int64_t v = vp(acc, p);
    return Padic::from_parts(p, v, acc / ppow(p, v), N);
}

namespace {

mpz_class binomial(std::int64_t n, std::int64_t k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

}  // namespace

SumIdentityCheck check_sum_identity(std::int64_t ell, std::int64_t n, const LValueTable& table, const G0Series& g0,
                                    std::int64_t N) {
    unsigned p = table.p;
    require(ell >= 1 && n >= 1, "check_sum_identity needs ell, n >= 1");
    SumIdentityCheck res;
    res.ell = ell;
    res.n = n;
    std::int64_t np = n * static_cast<std::int64_t>(p);
    Padic x = Padic::from_integer(p, np);
    std::int64_t vx = x.valuation();
    std::int64_t Nw = N + 64;
    mpq_class lhs_q = sum_powers_exact(ell, np, p) / mpq_class(ell);
    if ((ell - 1) % 2) lhs_q = -lhs_q;
    Padic lhs = Padic::from_rational(p, lhs_q, Nw);
    std::int64_t m0 = std::max<std::int64_t>((ell + 1) / 2, 1);
    std::int64_t m_max = table.entries.empty() ? 0 : table.entries.back().m;
    require(m_max >= m0, "check_sum_identity: L-value table too short for this ell");
    Padic rhs = Padic::zero(p);
    for (const auto& e : table.entries) {
        if (e.m < m0) continue;
        Padic term = Padic::from_integer(p, binomial(1 + 2 * e.m, ell)) * x.pow(1 + 2 * e.m - ell) *
                     Padic::divide(e.value, Padic::from_integer(p, 1 + 2 * e.m), Nw);
        rhs -= term;
    }
    res.m_used = m_max;
    Padic diff = lhs - rhs;
    res.residual_is_bound = diff.is_zero();
    res.residual_valuation = residual_digits(diff);
    // dropped terms m > m_max: v >= v(C) + (1+2m-l) v(np) + bound(2m) - v(1+2m)
    std::int64_t tail = kInf;
    for (std::int64_t m = m_max + 1; m <= m_max + 2000; ++m) {
        std::int64_t t = vp(binomial(1 + 2 * m, ell), p) + (1 + 2 * m - ell) * vx + g0_coefficient_bound(2 * m, p) -
                         vp(mpz_class(static_cast<long>(1 + 2 * m)), p);
        tail = std::min(tail, t);
    }
    res.tail_bound = tail;
    res.certified = std::min(res.residual_valuation, tail);
    if (ell == 1) {
        const Series& g = g0.g0;
        Padic val = Padic::zero(p), xk = Padic::one(p);
        for (std::int64_t k = 1; k <= g.order(); ++k) {
            xk = xk * x;
            val += g.coeff(k) * xk;
        }
        std::int64_t gtail = kInf;
        for (std::int64_t k = g.order() + 1; k <= g.order() + 2000; ++k)
            gtail = std::min(gtail, g0_coefficient_bound(k, p) + k * vx);
        Padic s1 = Padic::from_rational(p, sum_powers_exact(1, np, p), Nw);
        res.shortcut_certified = std::min(residual_digits(s1 - val), gtail);
    }
    return res;
}

Series gamma_module_polynomial(unsigned p, std::int64_t n) {
    require(n >= 1, "A(1, np; T) needs n >= 1");
    // sign (-1)^{np} so that A(1, np; 0) = Gamma_p(np); the bare minus sign only holds for odd n
    Series acc = Series::polynomial(p, {Padic::from_integer(p, (n % 2) ? -1 : 1)});
    for (std::int64_t i = 1; i < n * static_cast<std::int64_t>(p); ++i)
        if (i % p) acc = acc * Series::polynomial(p, {Padic::from_integer(p, i), Padic::one(p)});
    return acc;
}

Series gamma_shift(const GammaSeries& gs, std::int64_t i) {
    unsigned p = gs.p;
    require(i >= 1 && i < static_cast<std::int64_t>(p), "gamma_shift needs 1 <= i <= p-1");
    Series acc = Series::polynomial(p, {Padic::from_integer(p, (i % 2) ? -1 : 1)});
    for (std::int64_t j = 1; j < i; ++j) acc = acc * Series::polynomial(p, {Padic::from_integer(p, j), Padic::one(p)});
    return acc * gs.series;
}

FunctionalResidual functional_residual(const GammaSeries& gs, std::int64_t n, std::int64_t upto) {
    unsigned p = gs.p;
    const Series& G = gs.series;
    require(upto >= 0 && upto <= G.order(), "functional_residual: upto beyond the series order");
    FunctionalResidual out;
    out.n = n;
    out.upto = upto;
    Padic shift = Padic::from_integer(p, n * static_cast<std::int64_t>(p));
    std::int64_t vn = shift.valuation();
    DifferenceOperator sigma(Padic::one(p), shift);
    Series A = gamma_module_polynomial(p, n);
    Series left = compose_affine(G, sigma);
    Series right = (A * G).truncated(G.order());
    auto tm = tail_model(G);
    std::int64_t M = G.order();
    std::vector<std::optional<std::int64_t>> vg(M + 1);
    for (std::int64_t j = 0; j <= M; ++j)
        if (!G.coeff(j).is_zero()) vg[j] = G.coeff(j).valuation();
    out.min_relative = kInf;
    out.vanishes = true;
    for (std::int64_t k = 0; k <= upto; ++k) {
        ResidualCoefficient rc;
        rc.k = k;
        rc.value = left.coeff(k) - right.coeff(k);
        // dropped gamma_m, m > M: C(m,k)(np)^{m-k} gamma_m has v >= (m-k) vn + intercept + slope m
        std::int64_t tail = kInf;
        if (!tm || mpq_class(vn) + tm->slope <= 0) {
            tail = -kInf;
        } else {
            mpq_class b = mpq_class((M + 1 - k) * vn) + tm->bound(M + 1);
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            tail = fl.get_si();
        }
        // the known parts must cancel down to the tail level
        std::int64_t level = std::min(rc.value.is_exact() ? kInf : rc.value.precision(), tail);
        rc.vanishes = rc.value.is_zero() || rc.value.valuation() >= level;
        rc.certified = rc.vanishes ? level : rc.value.valuation();
        std::int64_t scale = kInf;
        for (std::int64_t j = k; j <= M; ++j)
            if (vg[j]) scale = std::min(scale, *vg[j] + (j - k) * vn);
        for (std::int64_t j = 0; j <= k; ++j) {
            const Padic& a = A.coeff(k - j);
            if (vg[j] && !a.is_zero()) scale = std::min(scale, *vg[j] + a.valuation());
        }
        rc.scale = scale;
        out.min_relative = std::min(out.min_relative, rc.certified - scale);
        out.vanishes = out.vanishes && rc.vanishes;
        out.coeffs.push_back(rc);
    }
    return out;
}

}  // namespace padq
