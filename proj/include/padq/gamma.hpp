#pragma once

#include <optional>
#include <vector>

#include "padq/newton.hpp"
#include "padq/series.hpp"

namespace padq {

// Gamma_p(n) = (-1)^n prod_{i < n, p not | i} i, exactly.
mpz_class gamma_at(std::uint64_t n, unsigned p);

// Taylor expansion of Gamma_p at 0 with per-coefficient certified absolute precision.
struct GammaSeries {
    unsigned p = 0;
    std::int64_t M = 0;
    std::int64_t N = 0;  // requested absolute precision of every coefficient
    Series series;
    std::int64_t nodes = 0;        // interpolation nodes 0, p, ..., nodes*p
    std::int64_t check_nodes = 0;  // the doubled run used for certification
    std::int64_t work_digits = 0;
    std::int64_t min_precision = 0;  // min certified absolute precision over n >= 1
};

struct GammaLimits {
    std::int64_t max_order = 4000;
    std::int64_t max_prec = 2000;
};

GammaSeries gamma_taylor(unsigned p, std::int64_t M, std::int64_t N, const GammaLimits& lim = {});

// Lower bound on v_p of the k-th coefficient of g_0: 0 for k <= p-2, -n on [p^{n-1}(p-1), p^n(p-1)).
std::int64_t g0_coefficient_bound(std::int64_t k, unsigned p);

struct G0Series {
    Series g0;
    std::vector<std::int64_t> odd_nonzero;  // odd indices whose coefficient is not zero to precision
    std::int64_t trimmed_at = 0;              // order after dropping coefficients known only below the bound
};

G0Series g0_series(const GammaSeries& gs);

struct LValueEntry {
    std::int64_t m = 0;
    Padic value;             // L_p(1+2m, omega^{-2m})
    Padic value_from_log;    // the same from the coefficient of T^{1+2m} in log Gamma
    bool routes_agree = false;
    std::optional<std::int64_t> valuation;  // none when the value is zero to its precision
    std::int64_t bound = 0;                 // valuation lower bound at index 2m
    bool flagged = false;                   // precision too low to decide the valuation
};

struct LValueTable {
    unsigned p = 0;
    Padic lambda0;
    std::vector<LValueEntry> entries;
};

LValueTable lvalues(const GammaSeries& gs, std::int64_t m_max);
LValueTable lvalues(const GammaSeries& gs, const G0Series& g0, std::int64_t m_max);

// S_l(k) = sum_{1 <= i < k, p not | i} i^{-l}
mpq_class sum_powers_exact(std::int64_t ell, std::int64_t k, unsigned p);
Padic sum_powers(std::int64_t ell, std::int64_t k, unsigned p, std::int64_t N);

struct SumIdentityCheck {
    std::int64_t ell = 0, n = 0;
    std::int64_t residual_valuation = 0;  // v(LHS - RHS), or the precision when the difference vanishes
    bool residual_is_bound = false;       // true when the difference vanished to precision
    std::int64_t tail_bound = 0;          // valuation bound on the dropped m > m_max terms
    std::int64_t certified = 0;           // min(residual, tail)
    std::int64_t m_used = 0;
    std::optional<std::int64_t> shortcut_certified;  // l = 1: S_1(np) - (g0(np) - g0(0))
};

SumIdentityCheck check_sum_identity(std::int64_t ell, std::int64_t n, const LValueTable& table, const G0Series& g0,
                                    std::int64_t N);

// Gamma_p expanded at i: (-1)^i (T+1)...(T+i-1) Gamma^0(T), T the offset from i.
Series gamma_shift(const GammaSeries& gs, std::int64_t i);

// A(1, np; T) = (-1)^{np} prod_{i < np, p not | i} (T + i), the ratio Gamma^0(T + np) / Gamma^0(T)
Series gamma_module_polynomial(unsigned p, std::int64_t n);

struct ResidualCoefficient {
    std::int64_t k = 0;
    Padic value;               // residual coefficient from the known parts
    std::int64_t certified = 0;  // absolute precision including the tail bound
    std::int64_t scale = 0;      // min valuation of the contributing terms
    bool vanishes = false;       // zero to the certified precision
};

struct FunctionalResidual {
    std::int64_t n = 1;
    std::int64_t upto = 0;
    std::vector<ResidualCoefficient> coeffs;
    std::int64_t min_relative = 0;  // min over k of certified - scale
    bool vanishes = false;
};

// Gamma^0(T + np) - A(1, np; T) Gamma^0(T) for coefficients 0..upto.
FunctionalResidual functional_residual(const GammaSeries& gs, std::int64_t n, std::int64_t upto);

}  // namespace padq
