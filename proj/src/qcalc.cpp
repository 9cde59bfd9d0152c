#include "padq/qcalc.hpp"

namespace padq {

Padic q_int(std::uint64_t n, const Padic& q) {
    unsigned p = q.prime();
    Padic acc = Padic::zero(p), qk = Padic::one(p);
    for (std::uint64_t k = 0; k < n; ++k) {
        acc += qk;
        qk = qk * q;
    }
    return acc;
}

Padic q_factorial(std::uint64_t n, const Padic& q) {
    unsigned p = q.prime();
    Padic acc = Padic::one(p), qint = Padic::zero(p), qk = Padic::one(p);
    for (std::uint64_t k = 1; k <= n; ++k) {
        qint += qk;
        qk = qk * q;
        acc = acc * qint;
    }
    return acc;
}

QContext make_qcontext(const Padic& q, const Padic& h) {
    DifferenceOperator check(q, h);
    QContext ctx{q.prime(), q, h, 1};
    mpq_class w(1, ctx.p - 1);
    Padic qk = q;
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(ctx.p) * ctx.p; ++k) {
        Padic d = qk - Padic::one(ctx.p);
        // |q^k - 1| < omega  <=>  v(q^k - 1) > 1/(p-1); an inexact zero only bounds v from below
        bool small = d.is_exact_zero() || mpq_class(d.is_zero() ? d.precision() : d.valuation()) > w;
        if (small) {
            ctx.kappa = k;
            return ctx;
        }
        qk = qk * q;
    }
    fail(ErrorCode::InvalidArgument, "no kappa found: q is not close enough to 1");
}

LogRadius omega_q_formula(unsigned p, std::int64_t kappa, const mpq_class& v_kappa) {
    if (kappa <= 1) return LogRadius::omega(p);
    return LogRadius(v_kappa + mpq_class(1, p - 1)).root(kappa);
}

LogRadius omega_q(const QContext& ctx) {
    if (ctx.kappa <= 1) return LogRadius::omega(ctx.p);
    Padic qk = q_int(static_cast<std::uint64_t>(ctx.kappa), ctx.q);
    return omega_q_formula(ctx.p, ctx.kappa, mpq_class(qk.valuation()));
}

bool is_root_of_unity(const Padic& q) { return (q - Padic::one(q.prime())).is_zero(); }

Series twisted_power(std::uint64_t n, const Padic& c, const DifferenceOperator& sigma, std::int64_t order,
                     const Padic& expansion_center) {
    unsigned p = sigma.prime();
    Padic e = expansion_center.prime() == 0 ? c : expansion_center;
    Series acc = Series::constant(Padic::one(p), kInf, e);
    Padic x = c;
    for (std::uint64_t k = 0; k < n; ++k) {
        // T - sigma^k(c) = (T - e) + (e - sigma^k(c))
        acc = acc * Series::polynomial(p, {e - x, Padic::one(p)}, e);
        x = sigma.apply(x);
    }
    return order < kInf ? acc.truncated(order) : acc;
}

}  // namespace padq
