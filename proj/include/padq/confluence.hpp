#pragma once

#include <string>
#include <vector>

#include "padq/strat.hpp"

namespace padq {

// sigma(Y) = A Y on a region of the line.
struct DiffModule {
    SeriesMatrix A;
    DifferenceOperator sigma;
    Region region;

    std::size_t rank() const { return A.rank(); }
    unsigned prime() const { return A.prime(); }
};

// f / ((q-1)T + h) for a matrix entry; exact polynomials must divide with zero remainder.
Series divide_by_delta(const Series& f, const DifferenceOperator& sigma, std::int64_t N_if_inexact = kInf);
// d_{q,h}(f) = (sigma(f) - f) / ((q-1)T + h)
Series d_qh(const Series& f, const DifferenceOperator& sigma, std::int64_t N_if_inexact = kInf);

// G_[0] = Id, G_[1] = (A - Id)/delta, G_[n+1] = sigma(G_[n]) G_[1] + d_{q,h}(G_[n]).
// Stops early once a truncated sequence runs out of known coefficients.
StratSequence twisted_strat_sequence(const DiffModule& mod, std::int64_t M);

// liminf_only skips the rank-one closed form and the a-priori clamp (the bare sequence bracket).
RadiusBracket generic_radius(const DiffModule& mod, const LogRadius& rho, std::int64_t M, bool liminf_only = false);

CompatibilityCertificate compatible(const DiffModule& mod, const std::vector<LogRadius>& sample, std::int64_t M);

bool nondegenerate(const DifferenceOperator& sigma);

enum class ConfluenceMethod { Limit, Derivative };

struct ConfluenceResult {
    DiffSystem system;
    std::int64_t precision = 0;            // absolute precision certified by agreement
    std::vector<std::int64_t> agreement;  // per level (limit) or per block of terms (derivative)
    int levels = 0;
    std::string method;
};

struct ConfluenceOptions {
    std::int64_t N = 40;    // target absolute precision
    int n_max = 8;          // limit levels
    std::int64_t terms = 0;  // derivative: Mahler terms (0 = automatic)
};

// Recovers G with deform(G, sigma) = A. The limit method runs sigma^{p^n} iterates through the cocycle
// A_{k+1} = (A_k o sigma) A; the derivative method differentiates the orbit t -> A_{sigma^t} at t = 0.
ConfluenceResult confluent_connection(const DiffModule& mod, std::int64_t M, ConfluenceMethod method,
                                      const ConfluenceOptions& opt = {});

// A_{sigma^k} from A_sigma.
SeriesMatrix iterate_module(const SeriesMatrix& A, const DifferenceOperator& sigma, std::uint64_t k);

// First-order family A(1 + a e, b e; T) = Id + e (a dq + b dh) from deforming with an infinitesimal e.
struct FirstOrderFamily {
    SeriesMatrix dq;  // d/dq A at (1, 0)
    SeriesMatrix dh;  // d/dh A at (1, 0)
};
FirstOrderFamily first_order_family(const DiffSystem& sys);
// G = (aT + b)^{-1} (a dq + b dh)
SeriesMatrix connection_from_family(const FirstOrderFamily& fam, const Padic& a, const Padic& b,
                                    std::int64_t N_if_inexact = kInf);

}  // namespace padq
