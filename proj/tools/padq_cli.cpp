// padq command-line front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "padq/padq.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kPrecision = 3 };

int exit_for(padq_status s) {
    switch (s) {
        case PADQ_OK: return kPass;
        case PADQ_ERR_INVALID_ARGUMENT:
        case PADQ_ERR_PARSE:
        case PADQ_ERR_MALFORMED_MODULE: return kUsage;
        default: return kPrecision;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Result JSON, the manifest and the exit status of one subcommand.
struct Run {
    std::string command;
    json params = json::object();
    json inputs = json::object();
    json result;
    padq_status status = PADQ_OK;
    std::string error;
    double seconds = 0;
    int exit_code = kPass;

    // Copies a C string result (if any) and records the status.
    void take(padq_status s, char* out) {
        status = s;
        if (out) {
            result = json::parse(out);
            padq_string_free(out);
        }
        if (s != PADQ_OK) {
            error = padq_last_error();
            exit_code = exit_for(s);
        }
    }
};

json certified_summary(const json& r) {
    json c = json::object();
    for (const char* k : {"precision", "min_precision", "certified", "min_relative", "shortcut_certified"})
        if (r.is_object() && r.contains(k)) c[k] = r[k];
    return c;
}

void write_artifacts(const Run& run, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::string stem = run.command;
    for (auto& ch : stem)
        if (ch == ' ') ch = '_';
    std::string result_file = stem + ".json";
    if (!run.result.is_null()) std::ofstream(fs::path(out_dir) / result_file) << run.result.dump(2) << "\n";
    json m{{"tool", "padq"},
           {"version", padq_version()},
           {"command", run.command},
           {"parameters", run.params},
           {"inputs", run.inputs},
           {"status", padq_status_name(run.status)},
           {"partial", run.status != PADQ_OK && !run.result.is_null()},
           {"outputs", run.result.is_null() ? json::array() : json::array({result_file})},
           {"certified", certified_summary(run.result)},
           {"timing", {{"seconds", run.seconds}}}};
    if (!run.error.empty()) m["error"] = run.error;
    std::ofstream(fs::path(out_dir) / (stem + ".manifest.json")) << m.dump(2) << "\n";
}

std::string val_str(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// p^v * m (mod p^N)
std::string padic_str(const json& x) {
    if (x["v"] == "inf") return x["N"] == "exact" ? "0" : "O(" + x["p"].dump() + "^" + x["N"].dump() + ")";
    std::string s = x["p"].dump() + "^" + x["v"].dump() + "*" + x["m"].get<std::string>();
    if (x["N"] != "exact") s += " + O(" + x["p"].dump() + "^" + x["N"].dump() + ")";
    return s;
}

void print_vertices(const char* label, const json& np) {
    std::cout << label << ":";
    for (const auto& v : np["vertices"]) std::cout << " (" << v[0].get<long>() << "," << val_str(v[1]) << ")";
    std::cout << (np["provisional"].get<bool>() ? "  [provisional tail]" : "") << "\n";
}

void print_valuations(const json& vals, long limit) {
    std::cout << "index  valuation  precision\n";
    long shown = 0;
    for (const auto& row : vals) {
        if (shown++ >= limit) {
            std::cout << "... (" << vals.size() << " coefficients, see JSON)\n";
            break;
        }
        std::printf("%5ld  %9s  %9s\n", row[0].get<long>(), val_str(row[1]).c_str(), val_str(row[2]).c_str());
    }
}

void print_human(const Run& run) {
    const json& r = run.result;
    if (run.command == "gamma taylor") {
        std::cout << "Gamma_" << r["p"] << " Taylor coefficients to order " << r["M"] << ", certified absolute precision >= "
                  << r["min_precision"] << " (" << r["nodes"] << " nodes, checked against " << r["check_nodes"] << ")\n";
        print_valuations(r["valuations"], 40);
    } else if (run.command == "gamma g0") {
        std::cout << "g_0 to order " << r["trimmed_at"] << ", odd coefficients not vanishing: " << r["odd_nonzero"].size()
                  << "\n";
        print_valuations(r["valuations"], 40);
    } else if (run.command == "gamma newton") {
        print_vertices("Gamma^0 Newton polygon", r["gamma0"]);
        print_vertices("g_0 Newton polygon", r["g0"]);
        std::cout << "radius exponent bracket: [" << val_str(r["radius"]["upper"]) << ", " << val_str(r["radius"]["lower"])
                  << "]\n";
        for (const auto& g : r["g0_gauss_norms"])
            std::cout << "|g_0| at r=" << val_str(g["r"]) << ": " << val_str(g["norm"]) << " (expected "
                      << val_str(g["expected"]) << ")\n";
    } else if (run.command == "gamma lvalues") {
        std::cout << "   m     s  valuation  bound  agree\n";
        for (const auto& e : r["entries"])
            std::printf("%4ld  %4ld  %9s  %5ld  %s\n", e["m"].get<long>(), e["s"].get<long>(),
                        val_str(e["valuation"]).c_str(), e["bound"].get<long>(),
                        e["routes_agree"].get<bool>() ? "yes" : "NO");
    } else if (run.command == "gamma sums") {
        std::cout << "S_" << r["ell"] << "(" << r["n"] << "p) = " << val_str(r["S"]) << "; identity certified to p^"
                  << r["certified"] << " (residual " << r["residual_valuation"] << ", tail " << r["tail_bound"] << ")";
        if (!r["shortcut_certified"].is_null()) std::cout << "; g_0 shortcut to p^" << r["shortcut_certified"];
        std::cout << "\n";
    } else if (run.command == "gamma residual") {
        std::cout << "residual through T^" << r["upto"] << ": vanishes=" << r["vanishes"]
                  << ", min relative precision " << r["min_relative"] << "\n";
    } else if (run.command == "deform") {
        std::cout << "certificate: " << val_str(r["certificate"]["verdict"]) << "\n" << r["A"].dump() << "\n";
    } else if (run.command == "confluence") {
        std::cout << r["method"].get<std::string>() << " confluence, precision p^" << val_str(r["precision"]) << "\n"
                  << r["G"].dump() << "\n";
    } else if (run.command == "profile") {
        for (const auto& pc : r["pieces"])
            std::cout << "[" << val_str(pc["from"]) << ", " << val_str(pc["to"]) << "]: " << val_str(pc["alpha"]) << " + "
                      << pc["beta"] << " r\n";
        std::cout << "fixed point: " << (r["fixed_point"].is_null() ? "none" : r["fixed_point"].dump()) << "\n";
    } else if (run.command == "qcalc") {
        std::cout << "[" << r["n"] << "]_q = " << padic_str(r["q_int"]) << "\n"
                  << "[" << r["n"] << "]_q! = " << padic_str(r["q_factorial"]) << "\n"
                  << "kappa = " << r["kappa"] << ", omega_q exponent " << val_str(r["omega_q"])
                  << (r["root_of_unity"].get<bool>() ? ", q is a root of unity" : "") << "\n";
    } else {
        std::cout << r.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"padq: p-adic confluence, deformation and Gamma_p toolkit"};
    app.set_help_flag("--help", "print help and exit");  // -h would collide with --h
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file")->check(CLI::ExistingFile);
    const char* env_out = std::getenv("PADQ_OUT_DIR");
    std::string out_dir = env_out && *env_out ? env_out : "padq_out";
    app.add_option("--out", out_dir, "artifact directory (default $PADQ_OUT_DIR or ./padq_out)");
    bool quiet = false;
    app.add_flag("--quiet", quiet, "no human-readable output");

    unsigned p = 3;
    std::int64_t prec = 40, order = 200;
    std::string q = "1+3^2", h = "0";

    auto add_common = [&](CLI::App* sc, bool with_p) {
        if (with_p) sc->add_option("--p", p, "odd prime")->check(CLI::Range(3u, 1000000u));
        sc->add_option("--prec", prec, "target absolute precision N")->check(CLI::Range(1, 100000));
    };

    std::string system_file, module_file, method = "derivative";
    int levels = 0;
    auto* deform = app.add_subcommand("deform", "deform a differential system along sigma_{q,h}");
    deform->add_option("--system", system_file, "system JSON")->required()->check(CLI::ExistingFile);
    deform->add_option("--q", q, "q as an exact expression");
    deform->add_option("--h", h, "h as an exact expression");
    deform->add_option("--order", order, "truncation order M")->check(CLI::Range(0, 4000));
    add_common(deform, false);

    auto* conf = app.add_subcommand("confluence", "recover the connection from a difference module");
    conf->add_option("--module", module_file, "module JSON")->required()->check(CLI::ExistingFile);
    conf->add_option("--method", method, "limit or derivative")->check(CLI::IsMember({"limit", "derivative"}));
    conf->add_option("--order", order, "truncation order M")->check(CLI::Range(1, 4000));
    conf->add_option("--levels", levels, "limit iterates (default 8)");
    add_common(conf, false);

    std::string center = "0", r_lo = "-2", r_hi = "4";
    auto* prof = app.add_subcommand("profile", "radius profile of sigma_{q,h} along a segment");
    prof->add_option("--q", q, "q");
    prof->add_option("--h", h, "h");
    prof->add_option("--center", center, "center c");
    prof->add_option("--from", r_lo, "smallest exponent r (largest rho)");
    prof->add_option("--to", r_hi, "largest exponent r");
    add_common(prof, true);

    std::uint64_t n_q = 5;
    auto* qc = app.add_subcommand("qcalc", "q-integers, q-factorials and omega_q");
    qc->add_option("--q", q, "q");
    qc->add_option("--h", h, "h");
    qc->add_option("--n", n_q, "n for [n]_q and [n]_q!");
    add_common(qc, true);

    auto* gam = app.add_subcommand("gamma", "Morita Gamma_p: Taylor series, g_0, Newton polygons, L-values");
    gam->require_subcommand(1);
    std::int64_t mmax = 20, ell = 1, n_sum = 1, upto = 150, n_shift = 1;
    auto gamma_sub = [&](const char* name, const char* desc) {
        auto* sc = gam->add_subcommand(name, desc);
        add_common(sc, true);
        sc->add_option("--order", order, "Taylor order M")->check(CLI::Range(8, 4000));
        return sc;
    };
    auto* g_taylor = gamma_sub("taylor", "certified Taylor coefficients of Gamma_p at 0");
    auto* g_g0 = gamma_sub("g0", "g_0 = Gamma'/Gamma");
    auto* g_newton = gamma_sub("newton", "Newton polygons and radius");
    auto* g_lv = gamma_sub("lvalues", "L_p(1+2m, omega^{-2m}) from the series");
    g_lv->add_option("--mmax", mmax, "largest m");
    auto* g_sums = gamma_sub("sums", "sums of inverse powers against the L-values");
    g_sums->add_option("--ell", ell, "power l")->check(CLI::Range(1, 1000));
    g_sums->add_option("--n", n_sum, "n in S_l(np)")->check(CLI::Range(1, 100000));
    g_sums->add_option("--mmax", mmax, "L-table depth");
    auto* g_res = gamma_sub("residual", "functional equation residual");
    g_res->add_option("--upto", upto, "highest coefficient checked");
    g_res->add_option("--n", n_shift, "shift np");

    std::uint64_t seed = 1;
    std::vector<int> only;
    auto* check = app.add_subcommand("check", "run the acceptance suite");
    add_common(check, true);
    check->add_option("--order", order, "base truncation order")->check(CLI::Range(50, 4000));
    check->add_option("--seed", seed, "seed for the randomized criteria");
    check->add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, 10));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    Run run;
    auto t0 = std::chrono::steady_clock::now();
    char* out = nullptr;
    // out must be read after the call has filled it, so it is never a sibling argument of that call
    auto finish = [&](padq_status s) { run.take(s, out); };
    try {
        if (*deform) {
            run.command = "deform";
            run.params = {{"q", q}, {"h", h}, {"order", order}, {"prec", prec}};
            std::string text = read_file(system_file);
            run.inputs["system"] = {{"path", system_file}, {"content", json::parse(text)}};
            padq_system* sys = nullptr;
            padq_status s = padq_system_from_json(text.c_str(), prec, &sys);
            if (s == PADQ_OK) {
                s = padq_deform(sys, q.c_str(), h.c_str(), order, prec, &out, nullptr);
                padq_system_free(sys);
            }
            run.take(s, out);
        } else if (*conf) {
            run.command = "confluence";
            run.params = {{"method", method}, {"order", order}, {"prec", prec}, {"levels", levels}};
            std::string text = read_file(module_file);
            run.inputs["module"] = {{"path", module_file}, {"content", json::parse(text)}};
            padq_module* mod = nullptr;
            padq_status s = padq_module_from_json(text.c_str(), prec, &mod);
            if (s == PADQ_OK) {
                s = padq_confluence(mod, method.c_str(), order, prec, levels, &out);
                padq_module_free(mod);
            }
            run.take(s, out);
        } else if (*prof) {
            run.command = "profile";
            run.params = {{"p", p}, {"q", q}, {"h", h}, {"center", center}, {"from", r_lo}, {"to", r_hi}, {"prec", prec}};
            finish(padq_profile(p, q.c_str(), h.c_str(), center.c_str(), r_lo.c_str(), r_hi.c_str(), prec, &out));
        } else if (*qc) {
            run.command = "qcalc";
            run.params = {{"p", p}, {"q", q}, {"h", h}, {"n", n_q}, {"prec", prec}};
            finish(padq_qcalc(p, q.c_str(), h.c_str(), n_q, prec, &out));
        } else if (*gam) {
            CLI::App* sc = gam->get_subcommands().front();
            run.command = "gamma " + sc->get_name();
            run.params = {{"p", p}, {"order", order}, {"prec", prec}};
            padq_gamma* g = nullptr;
            padq_status s = padq_gamma_create(p, order, prec, &g);
            if (s == PADQ_OK) {
                if (sc == g_taylor) s = padq_gamma_taylor(g, &out);
                else if (sc == g_g0) s = padq_gamma_g0(g, &out);
                else if (sc == g_newton) s = padq_gamma_newton(g, &out);
                else if (sc == g_lv) {
                    run.params["mmax"] = mmax;
                    s = padq_gamma_lvalues(g, mmax, &out);
                } else if (sc == g_sums) {
                    run.params.update({{"ell", ell}, {"n", n_sum}, {"mmax", mmax}});
                    s = padq_gamma_sums(g, ell, n_sum, mmax, &out);
                } else if (sc == g_res) {
                    run.params.update({{"n", n_shift}, {"upto", upto}});
                    s = padq_gamma_residual(g, n_shift, upto, &out);
                }
                padq_gamma_free(g);
            }
            run.take(s, out);
        } else if (*check) {
            run.command = "check";
            run.params = {{"p", p}, {"prec", prec}, {"order", order}, {"seed", seed}, {"only", only}};
            int all = 0;
            auto cb = [](const char* js, void* user) {
                json r = json::parse(js);
                if (!*static_cast<bool*>(user))
                    std::printf("[%s] criterion %2d  %-40s %7.2fs  %s\n", r["passed"].get<bool>() ? "PASS" : "FAIL",
                                r["id"].get<int>(), r["name"].get<std::string>().c_str(), r["seconds"].get<double>(),
                                r["detail"].get<std::string>().c_str());
                std::fflush(stdout);
            };
            finish(padq_check(p, prec, order, seed, only.empty() ? nullptr : only.data(), only.size(), cb, &quiet, &out,
                              &all));
            if (run.status == PADQ_OK && !all) run.exit_code = kCheckFailed;
        }
    } catch (const json::exception& e) {
        std::cerr << "padq: malformed JSON input: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "padq: " << e.what() << "\n";
        return kUsage;
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // timings live only in the manifest so result files are byte-identical across runs
    if (run.result.is_object() && run.command == "check")
        for (auto& c : run.result["criteria"]) c.erase("seconds");
    try {
        write_artifacts(run, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "padq: cannot write artifacts to " << out_dir << ": " << e.what() << "\n";
        return kUsage;
    }
    if (run.status != PADQ_OK)
        std::cerr << "padq " << run.command << ": " << padq_status_name(run.status) << ": " << run.error << "\n";
    else if (!quiet && run.command != "check")
        print_human(run);
    if (run.command == "check" && run.status == PADQ_OK)
        std::cout << (run.exit_code == kPass ? "check: all criteria passed" : "check: FAILED") << "\n";
    return run.exit_code;
}
