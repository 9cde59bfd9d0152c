#pragma once

#include "padq/series.hpp"

namespace padq {

// [n]_q = 1 + q + ... + q^(n-1)
Padic q_int(std::uint64_t n, const Padic& q);
// [n]_q! = [1]_q [2]_q ... [n]_q
Padic q_factorial(std::uint64_t n, const Padic& q);

struct QContext {
    unsigned p = 0;
    Padic q;
    Padic h;
    std::int64_t kappa = 1;  // smallest k >= 1 with |q^k - 1| < omega
};

QContext make_qcontext(const Padic& q, const Padic& h);

// omega_q = omega when kappa = 1, else ([kappa]_q * omega)^(1/kappa).
LogRadius omega_q(const QContext& ctx);
// The kappa >= 2 branch on synthetic data: v_kappa = v_p([kappa]_q).
LogRadius omega_q_formula(unsigned p, std::int64_t kappa, const mpq_class& v_kappa);

// Over Q_p (p >= 3) with |q - 1| < 1 the only root of unity is q = 1.
bool is_root_of_unity(const Padic& q);

// prod_{k<n} (T - sigma^k(c)) expanded at expansion_center (default: c).
Series twisted_power(std::uint64_t n, const Padic& c, const DifferenceOperator& sigma, std::int64_t order = kInf,
                     const Padic& expansion_center = Padic());

}  // namespace padq
