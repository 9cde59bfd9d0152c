#include "padq/padq.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>

#include "padq/acceptance.hpp"
#include "padq/json_io.hpp"

using namespace padq;

struct padq_system {
    DiffSystem sys;
};
struct padq_module {
    DiffModule mod;
};
struct padq_gamma {
    GammaSeries gs;
    std::optional<G0Series> g0;
    std::optional<LValueTable> table;
    std::int64_t table_depth = 0;

    const G0Series& get_g0() {
        if (!g0) g0 = g0_series(gs);
        return *g0;
    }
    const LValueTable& get_table(std::int64_t m_max) {
        if (!table || table_depth != m_max) {
            table = lvalues(gs, get_g0(), m_max);
            table_depth = m_max;
        }
        return *table;
    }
};

namespace {

thread_local std::string g_last_error;

padq_status status_of(ErrorCode c) { return static_cast<padq_status>(static_cast<int>(c)); }

template <class F>
padq_status guarded(F&& f) {
    g_last_error.clear();
    try {
        f();
        return PADQ_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const json::exception& e) {
        g_last_error = e.what();
        return PADQ_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PADQ_ERR_RESOURCE_LIMIT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PADQ_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(const json& j, char** out) {
    require(out != nullptr, "output pointer is null");
    *out = dup_string(j.dump());
}

void need(const void* p, const char* what) { require(p != nullptr, std::string(what) + " is null"); }

void check_prime(unsigned p) {
    require(p >= 3, "p must be an odd prime");
    for (unsigned d = 2; d * d <= p; ++d) require(p % d != 0, "p must be prime");
}

void check_prec(std::int64_t N) { require(N >= 1 && N <= 100000, "precision out of range"); }

}  // namespace

extern "C" {

const char* padq_version(void) { return "0.1.0"; }

const char* padq_status_name(padq_status s) {
    if (s == PADQ_OK) return "ok";
    if (s < PADQ_ERR_INVALID_ARGUMENT || s > PADQ_ERR_INTERNAL) return "unknown";
    return error_code_name(static_cast<ErrorCode>(s));
}

const char* padq_last_error(void) { return g_last_error.c_str(); }

void padq_string_free(char* s) { std::free(s); }

padq_status padq_scalar_parse(const char* expr, unsigned p, int64_t prec, char** out_json) {
    return guarded([&] {
        need(expr, "expression");
        check_prime(p);
        check_prec(prec);
        emit(to_json(parse_scalar(expr, p, prec)), out_json);
    });
}

padq_status padq_system_from_json(const char* text, int64_t prec, padq_system** out) {
    return guarded([&] {
        need(text, "json");
        need(out, "output handle");
        check_prec(prec);
        *out = new padq_system{system_from_json(parse_json_text(text, "system"), prec)};
    });
}

void padq_system_free(padq_system* sys) { delete sys; }

padq_status padq_system_to_json(const padq_system* sys, char** out_json) {
    return guarded([&] {
        need(sys, "system");
        emit(to_json(sys->sys), out_json);
    });
}

padq_status padq_deform(const padq_system* sys, const char* q, const char* h, int64_t order, int64_t prec,
                        char** out_json, padq_module** out_module) {
    return guarded([&] {
        need(sys, "system");
        need(q, "q");
        need(h, "h");
        require(order >= 0, "order must be non-negative");
        check_prec(prec);
        unsigned p = sys->sys.prime();
        DifferenceOperator sigma(parse_scalar(q, p, prec), parse_scalar(h, p, prec));
        auto cert = certify_deformation(sys->sys, sigma, {}, std::max<std::int64_t>(order, 32));
        json j{{"q", to_json(sigma.q())}, {"h", to_json(sigma.h())}, {"certificate", to_json(cert)}};
        if (cert.verdict != Verdict::Compatible) {
            // the caller still gets the certificate; deform() below raises the incompatibility
            j["A"] = nullptr;
            emit(j, out_json);
        }
        SeriesMatrix A = deform(sys->sys, sigma, order, prec, cert);
        DiffModule mod{A, sigma, sys->sys.region};
        j["A"] = to_json(A);
        j["precision"] = A.min_precision() >= kInf ? json("exact") : json(A.min_precision());
        j["module"] = to_json(mod);
        emit(j, out_json);
        if (out_module) *out_module = new padq_module{mod};
    });
}

padq_status padq_module_from_json(const char* text, int64_t prec, padq_module** out) {
    return guarded([&] {
        need(text, "json");
        need(out, "output handle");
        check_prec(prec);
        *out = new padq_module{module_from_json(parse_json_text(text, "module"), prec)};
    });
}

void padq_module_free(padq_module* mod) { delete mod; }

padq_status padq_module_to_json(const padq_module* mod, char** out_json) {
    return guarded([&] {
        need(mod, "module");
        emit(to_json(mod->mod), out_json);
    });
}

padq_status padq_module_compatible(const padq_module* mod, int64_t order, char** out_json) {
    return guarded([&] {
        need(mod, "module");
        require(order >= 1, "order must be positive");
        emit(to_json(compatible(mod->mod, {}, order)), out_json);
    });
}

padq_status padq_confluence(const padq_module* mod, const char* method, int64_t order, int64_t prec, int levels,
                            char** out_json) {
    return guarded([&] {
        need(mod, "module");
        need(method, "method");
        check_prec(prec);
        std::string m = method;
        require(m == "limit" || m == "derivative", "method must be 'limit' or 'derivative'");
        ConfluenceOptions opt;
        opt.N = prec;
        if (levels > 0) opt.n_max = levels;
        auto cert = compatible(mod->mod, {}, std::max<std::int64_t>(order, 32));
        auto res = confluent_connection(mod->mod, order,
                                        m == "limit" ? ConfluenceMethod::Limit : ConfluenceMethod::Derivative, opt);
        json j = to_json(res);
        j["certificate"] = to_json(cert);
        emit(j, out_json);
    });
}

padq_status padq_profile(unsigned p, const char* q, const char* h, const char* center, const char* r_lo,
                         const char* r_hi, int64_t prec, char** out_json) {
    return guarded([&] {
        need(q, "q");
        need(h, "h");
        need(center, "center");
        need(r_lo, "r_lo");
        need(r_hi, "r_hi");
        check_prime(p);
        check_prec(prec);
        DifferenceOperator sigma(parse_scalar(q, p, prec), parse_scalar(h, p, prec));
        Padic c = parse_scalar(center, p, prec);
        auto prof = sigma_radius_profile(sigma, c, LogRadius(parse_expr(r_lo)), LogRadius(parse_expr(r_hi)));
        json j = to_json(prof);
        std::optional<Padic> a;
        if (!sigma.is_identity()) a = controlling_graph_endpoint(sigma, prec);
        j["fixed_point"] = a ? to_json(*a) : json(nullptr);
        json lap = json::array();
        for (const auto& b : prof.breakpoints()) lap.push_back(json::array({rational_string(b), profile_laplacian(prof, b)}));
        j["laplacian"] = lap;
        // sampled (r, exponent) pairs at the ends, breaks and eighths of the segment
        json samples = json::array();
        for (int k = 0; k <= 8; ++k) {
            mpq_class r = prof.r_lo + (prof.r_hi - prof.r_lo) * k / 8;
            r.canonicalize();
            samples.push_back(json::array({rational_string(r), prof.at(r).to_string()}));
        }
        j["samples"] = samples;
        emit(j, out_json);
    });
}

padq_status padq_qcalc(unsigned p, const char* q, const char* h, uint64_t n, int64_t prec, char** out_json) {
    return guarded([&] {
        need(q, "q");
        need(h, "h");
        check_prime(p);
        check_prec(prec);
        require(n <= 100000, "n out of range");
        Padic qq = parse_scalar(q, p, prec), hh = parse_scalar(h, p, prec);
        QContext ctx = make_qcontext(qq, hh);
        emit({{"p", p},
              {"q", to_json(qq)},
              {"h", to_json(hh)},
              {"n", n},
              {"q_int", to_json(q_int(n, qq))},
              {"q_factorial", to_json(q_factorial(n, qq))},
              {"kappa", ctx.kappa},
              {"omega_q", omega_q(ctx).to_string()},
              {"root_of_unity", is_root_of_unity(qq)}},
             out_json);
    });
}

padq_status padq_gamma_create(unsigned p, int64_t order, int64_t prec, padq_gamma** out) {
    return guarded([&] {
        need(out, "output handle");
        check_prime(p);
        check_prec(prec);
        *out = new padq_gamma{gamma_taylor(p, order, prec), {}, {}, 0};
    });
}

void padq_gamma_free(padq_gamma* g) { delete g; }

padq_status padq_gamma_taylor(padq_gamma* g, char** out_json) {
    return guarded([&] {
        need(g, "gamma handle");
        emit(to_json(g->gs), out_json);
    });
}

padq_status padq_gamma_g0(padq_gamma* g, char** out_json) {
    return guarded([&] {
        need(g, "gamma handle");
        emit(to_json(g->get_g0()), out_json);
    });
}

padq_status padq_gamma_newton(padq_gamma* g, char** out_json) {
    return guarded([&] {
        need(g, "gamma handle");
        const auto& g0 = g->get_g0();
        unsigned p = g->gs.p;
        json j{{"p", p}, {"M", g->gs.M}};
        j["gamma0"] = to_json(newton_polygon(g->gs.series));
        j["g0"] = to_json(newton_polygon(g0.g0));
        j["radius"] = to_json(radius_estimate(g->gs.series));
        // Gauss norms of g_0 between r_0 = |p|^{1/p} and r_1 = omega^{1/(p-1)}
        mpq_class r0(1, p), r1(1, (p - 1) * (p - 1));
        json gn = json::array();
        for (const mpq_class& r : {r0, mpq_class((r0 + r1) / 2), r1}) {
            mpq_class rr = r;
            rr.canonicalize();
            auto e = gauss_norm_estimate(g0.g0, LogRadius(rr));
            gn.push_back({{"r", rational_string(rr)},
                          {"norm", e.norm.to_string()},
                          {"expected", rational_string(mpq_class(rr * (p - 1) - 1))},
                          {"certified", e.certified}});
        }
        j["g0_gauss_norms"] = gn;
        emit(j, out_json);
    });
}

padq_status padq_gamma_lvalues(padq_gamma* g, int64_t m_max, char** out_json) {
    return guarded([&] {
        need(g, "gamma handle");
        require(m_max >= 1 && 2 * m_max < g->gs.M, "need 1 <= mmax and 2*mmax < order");
        emit(to_json(g->get_table(m_max)), out_json);
    });
}

padq_status padq_gamma_sums(padq_gamma* g, int64_t ell, int64_t n, int64_t m_max, char** out_json) {
    return guarded([&] {
        need(g, "gamma handle");
        require(ell >= 1 && n >= 1, "need ell >= 1 and n >= 1");
        require(m_max >= 1 && 2 * m_max < g->gs.M, "need 1 <= mmax and 2*mmax < order");
        const auto& t = g->get_table(m_max);
        auto c = check_sum_identity(ell, n, t, g->get_g0(), g->gs.N);
        json j = to_json(c);
        std::int64_t k = n * static_cast<std::int64_t>(g->gs.p);
        j["S"] = rational_string(sum_powers_exact(ell, k, g->gs.p));
        emit(j, out_json);
    });
}

padq_status padq_gamma_residual(padq_gamma* g, int64_t n, int64_t upto, char** out_json) {
    return guarded([&] {
        need(g, "gamma handle");
        require(n >= 1 && upto >= 0 && upto <= g->gs.M, "need n >= 1 and 0 <= upto <= order");
        emit(to_json(functional_residual(g->gs, n, upto)), out_json);
    });
}

padq_status padq_check(unsigned p, int64_t prec, int64_t order, uint64_t seed, const int* only, size_t n_only,
                       padq_check_callback cb, void* user, char** out_json, int* all_passed) {
    return guarded([&] {
        check_prime(p);
        check_prec(prec);
        require(order >= 50, "order must be at least 50");
        AcceptanceParams params;
        params.p = p;
        params.N = prec;
        params.M = order;
        params.seed = seed;
        if (only) params.only.assign(only, only + n_only);
        auto as_json = [](const CriterionResult& r) {
            return json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                        {"seconds", r.seconds}};
        };
        json results = json::array();
        bool ok = true;
        run_acceptance(params, [&](const CriterionResult& r) {
            ok = ok && r.passed;
            json j = as_json(r);
            results.push_back(j);
            if (cb) cb(j.dump().c_str(), user);
        });
        if (all_passed) *all_passed = ok ? 1 : 0;
        emit({{"p", p}, {"N", prec}, {"M", order}, {"seed", seed}, {"all_passed", ok}, {"criteria", results}},
             out_json);
    });
}

}  // extern "C"
