#include "padq/json_io.hpp"

#include <cctype>

namespace padq {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
    fail(ErrorCode::Parse, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    mpq_class run() {
        mpq_class v = sum();
        skip();
        if (i_ != s_.size()) err("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void err(const std::string& m) const {
        fail(ErrorCode::Parse, "expression '" + s_ + "' at offset " + std::to_string(i_) + ": " + m);
    }

    mpq_class sum() {
        mpq_class v = product();
        for (;;) {
            if (eat('+')) v += product();
            else if (eat('-')) v -= product();
            else return v;
        }
    }
    mpq_class product() {
        mpq_class v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                mpq_class d = unary();
                if (d == 0) err("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }
    mpq_class unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    // right-associative, binds tighter than unary minus on the left: -3^2 = -9
    mpq_class power() {
        mpq_class b = atom();
        if (!eat('^')) return b;
        mpq_class e = unary();
        if (e.get_den() != 1) err("non-integer exponent");
        if (!e.get_num().fits_slong_p() || abs(e.get_num()) > 100000) err("exponent out of range");
        long k = e.get_num().get_si();
        if (k < 0 && b == 0) err("zero to a negative power");
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
        mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
        mpq_class r = k < 0 ? mpq_class(den, num) : mpq_class(num, den);
        r.canonicalize();
        return r;
    }
    mpq_class atom() {
        if (eat('(')) {
            mpq_class v = sum();
            if (!eat(')')) err("missing ')'");
            return v;
        }
        skip();
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_) err(i_ < s_.size() ? "expected a number" : "unexpected end");
        return mpq_class(mpz_class(s_.substr(st, i_ - st)));
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

json prec_json(std::int64_t N) { return N >= kInf ? json("exact") : json(N); }

std::int64_t get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) parse_fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path, std::string("missing key '") + key + "'");
    return *it;
}

unsigned get_prime(const json& j, const std::string& path) {
    std::int64_t p = get_int(member(j, "p", path), path + "/p");
    if (p < 3 || p > 1000000) parse_fail(path + "/p", "prime out of range");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) parse_fail(path + "/p", "not a prime");
    return static_cast<unsigned>(p);
}

json bracket_or_null(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

mpq_class parse_expr(const std::string& s) { return ExprParser(s).run(); }

Padic padic_from_rational(unsigned p, const mpq_class& q, std::int64_t N) {
    if (q == 0) return Padic::zero(p);
    mpz_class den = q.get_den();
    std::int64_t k = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
        den /= p;
        ++k;
    }
    if (den == 1) return Padic::from_integer(p, q.get_num()).shifted(-k);
    return Padic::from_rational(p, q, N);
}

Padic parse_scalar(const std::string& s, unsigned p, std::int64_t N) { return padic_from_rational(p, parse_expr(s), N); }

json to_json(const Padic& x) {
    json j;
    j["p"] = x.prime();
    j["v"] = x.is_zero() ? json("inf") : json(x.valuation());
    j["m"] = x.is_zero() ? std::string("0") : x.unit().get_str();
    j["N"] = prec_json(x.precision());
    return j;
}

json to_json(const LogRadius& r) { return r.to_string(); }

json to_json(const Series& f) {
    json j;
    j["p"] = f.prime();
    j["center"] = to_json(f.center());
    j["min_index"] = f.min_index();
    j["M"] = prec_json(f.order());
    json cs = json::array();
    for (const auto& c : f.coeffs()) cs.push_back(to_json(c));
    j["coeffs"] = cs;
    return j;
}

json to_json(const SeriesMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rank(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.rank(); ++k) row.push_back(to_json(m.at(i, k)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const NewtonPolygon& np) {
    json vs = json::array();
    for (const auto& v : np.vertices) vs.push_back(json::array({v.n, rational_string(v.v)}));
    json sl = json::array();
    for (const auto& s : np.slopes()) sl.push_back(rational_string(s));
    return {{"vertices", vs}, {"slopes", sl}, {"provisional", np.provisional}};
}

json to_json(const RadiusBracket& b) {
    return {{"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}, {"exact", b.exact}};
}

json to_json(const Region& r) {
    return {{"center", to_json(r.center)}, {"inner", to_json(r.inner)}, {"outer", to_json(r.outer)}};
}

json to_json(const CompatibilityCertificate& c) {
    json pts = json::array();
    for (const auto& pt : c.points)
        pts.push_back({{"point", to_json(pt.point)},
                       {"R_sigma", to_json(pt.r_sigma)},
                       {"R_generic_lo", to_json(pt.generic_lo)},
                       {"R_generic_hi", to_json(pt.generic_hi)},
                       {"verdict", verdict_name(pt.verdict)}});
    return {{"verdict", verdict_name(c.verdict)},
            {"inequality", c.inequality},
            {"source", c.source},
            {"extends_to_disc", c.extends_to_disc},
            {"points", pts}};
}

json to_json(const SegmentProfile& prof) {
    json pcs = json::array();
    for (const auto& pc : prof.pieces)
        pcs.push_back({{"from", rational_string(pc.from)},
                       {"to", rational_string(pc.to)},
                       {"alpha", rational_string(pc.alpha)},
                       {"beta", pc.beta}});
    json bps = json::array();
    for (const auto& b : prof.breakpoints()) bps.push_back(rational_string(b));
    return {{"center", to_json(prof.center)},
            {"r_lo", rational_string(prof.r_lo)},
            {"r_hi", rational_string(prof.r_hi)},
            {"vanishes", prof.vanishes},
            {"pieces", pcs},
            {"breakpoints", bps}};
}

json to_json(const ConfluenceResult& r) {
    return {{"method", r.method},
            {"precision", prec_json(r.precision)},
            {"levels", r.levels},
            {"agreement", r.agreement},
            {"G", to_json(r.system.G)},
            {"region", to_json(r.system.region)}};
}

json to_json(const GammaSeries& gs) {
    json vals = json::array();
    for (std::int64_t n = 0; n <= gs.M; ++n) {
        Padic c = gs.series.coeff(n);
        vals.push_back(json::array({n, c.is_zero() ? json(nullptr) : json(c.valuation()), prec_json(c.precision())}));
    }
    return {{"p", gs.p},
            {"M", gs.M},
            {"N", gs.N},
            {"nodes", gs.nodes},
            {"check_nodes", gs.check_nodes},
            {"work_digits", gs.work_digits},
            {"min_precision", gs.min_precision},
            {"valuations", vals},
            {"series", to_json(gs.series)}};
}

json to_json(const G0Series& g0) {
    json vals = json::array();
    for (std::int64_t n = 0; n <= g0.g0.max_index(); ++n) {
        Padic c = g0.g0.coeff(n);
        vals.push_back(json::array({n, c.is_zero() ? json(nullptr) : json(c.valuation()), prec_json(c.precision())}));
    }
    return {{"trimmed_at", g0.trimmed_at},
            {"odd_nonzero", g0.odd_nonzero},
            {"valuations", vals},
            {"series", to_json(g0.g0)}};
}

json to_json(const LValueTable& t) {
    json es = json::array();
    for (const auto& e : t.entries)
        es.push_back({{"m", e.m},
                      {"s", 1 + 2 * e.m},
                      {"value", to_json(e.value)},
                      {"value_from_log", to_json(e.value_from_log)},
                      {"routes_agree", e.routes_agree},
                      {"valuation", bracket_or_null(e.valuation)},
                      {"bound", e.bound},
                      {"flagged", e.flagged}});
    return {{"p", t.p}, {"lambda0", to_json(t.lambda0)}, {"entries", es}};
}

json to_json(const SumIdentityCheck& c) {
    return {{"ell", c.ell},
            {"n", c.n},
            {"residual_valuation", c.residual_valuation},
            {"residual_is_bound", c.residual_is_bound},
            {"tail_bound", c.tail_bound},
            {"certified", c.certified},
            {"m_used", c.m_used},
            {"shortcut_certified", bracket_or_null(c.shortcut_certified)}};
}

json to_json(const FunctionalResidual& r) {
    json cs = json::array();
    for (const auto& c : r.coeffs)
        cs.push_back({{"k", c.k},
                      {"certified", c.certified},
                      {"scale", c.scale},
                      {"vanishes", c.vanishes}});
    return {{"n", r.n}, {"upto", r.upto}, {"min_relative", r.min_relative}, {"vanishes", r.vanishes}, {"coeffs", cs}};
}

Padic scalar_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path) {
    try {
        if (j.is_string()) return parse_scalar(j.get<std::string>(), p, N);
        if (j.is_number_integer()) return Padic::from_integer(p, mpz_class(std::to_string(j.get<std::int64_t>())));
        if (j.is_object()) {
            if (j.contains("p") && get_int(j["p"], path + "/p") != static_cast<std::int64_t>(p))
                parse_fail(path + "/p", "prime mismatch");
            const json& jm = member(j, "m", path);
            if (!jm.is_string()) parse_fail(path + "/m", "expected a decimal string");
            mpz_class m;
            if (m.set_str(jm.get<std::string>(), 10) != 0) parse_fail(path + "/m", "bad integer");
            std::int64_t prec = kInf;
            if (j.contains("N") && !(j["N"].is_string() && j["N"] == "exact")) prec = get_int(j["N"], path + "/N");
            const json& jv = member(j, "v", path);
            if (jv.is_string() && jv == "inf") return Padic::zero(p, prec);
            return Padic::from_parts(p, get_int(jv, path + "/v"), m, prec);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse && std::string(e.what()).rfind("at ", 0) == 0) throw;
        parse_fail(path, e.what());
    }
    parse_fail(path, "expected a scalar");
}

LogRadius radius_from_json(const json& j, const std::string& path) {
    try {
        if (j.is_string()) {
            std::string s = j.get<std::string>();
            if (s == "inf" || s == "+inf" || s == "-inf") return LogRadius::parse(s);
            return LogRadius(parse_expr(s));
        }
        if (j.is_number_integer()) return LogRadius::exponent(mpq_class(j.get<long>()));
    } catch (const Error& e) {
        parse_fail(path, e.what());
    }
    parse_fail(path, "expected a radius exponent");
}

Series series_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path) {
    if (j.is_string() || j.is_number_integer()) return Series::constant(scalar_from_json(j, p, N, path));
    const json* cs = &j;
    std::int64_t order = kInf;
    Padic center = Padic::zero(p);
    std::int64_t min_index = 0;
    std::string cpath = path;
    if (j.is_object() && !j.contains("v")) {
        cs = &member(j, "coeffs", path);
        cpath = path + "/coeffs";
        if (j.contains("M") && !(j["M"].is_string() && j["M"] == "exact")) {
            order = get_int(j["M"], path + "/M");
            if (order < 0) parse_fail(path + "/M", "negative truncation order");
        }
        if (j.contains("center")) center = scalar_from_json(j["center"], p, N, path + "/center");
        if (j.contains("min_index")) min_index = get_int(j["min_index"], path + "/min_index");
    } else if (j.is_object()) {
        return Series::constant(scalar_from_json(j, p, N, path));
    }
    if (!cs->is_array()) parse_fail(cpath, "expected a coefficient array");
    std::vector<Padic> c;
    for (std::size_t i = 0; i < cs->size(); ++i)
        c.push_back(scalar_from_json((*cs)[i], p, N, cpath + "/" + std::to_string(i)));
    try {
        return Series(p, std::move(c), order, center, min_index);
    } catch (const Error& e) {
        parse_fail(path, e.what());
    }
}

SeriesMatrix matrix_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path) {
    if (!j.is_array() || j.empty()) parse_fail(path, "expected a non-empty array of rows");
    std::size_t r = j.size();
    SeriesMatrix m = SeriesMatrix::zero(r, p);
    bool first = true;
    for (std::size_t i = 0; i < r; ++i) {
        std::string rp = path + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != r) parse_fail(rp, "expected a row of length " + std::to_string(r));
        for (std::size_t k = 0; k < r; ++k) {
            m.at(i, k) = series_from_json(j[i][k], p, N, rp + "/" + std::to_string(k));
            if (!first && !m.at(i, k).center().identical(m.at(0, 0).center()))
                parse_fail(rp + "/" + std::to_string(k), "entries must share one center");
            first = false;
        }
    }
    return m;
}

Region region_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path) {
    Region r = Region::line(p);
    if (j.is_null()) return r;
    if (!j.is_object()) parse_fail(path, "expected an object");
    if (j.contains("center")) r.center = scalar_from_json(j["center"], p, N, path + "/center");
    if (j.contains("inner")) r.inner = radius_from_json(j["inner"], path + "/inner");
    if (j.contains("outer")) r.outer = radius_from_json(j["outer"], path + "/outer");
    if (!r.inner.radius_less(r.outer)) parse_fail(path, "inner radius must be below the outer radius");
    return r;
}

DiffSystem system_from_json(const json& j, std::int64_t N) {
    unsigned p = get_prime(j, "");
    DiffSystem sys{matrix_from_json(member(j, "G", ""), p, N, "/G"),
                   region_from_json(j.contains("region") ? j["region"] : json(), p, N, "/region")};
    return sys;
}

json to_json(const DiffSystem& sys) {
    return {{"p", sys.prime()}, {"G", to_json(sys.G)}, {"region", to_json(sys.region)}};
}

DiffModule module_from_json(const json& j, std::int64_t N) {
    unsigned p = get_prime(j, "");
    Padic q = scalar_from_json(member(j, "q", ""), p, N, "/q");
    Padic h = j.contains("h") ? scalar_from_json(j["h"], p, N, "/h") : Padic::zero(p);
    try {
        DifferenceOperator sigma(q, h);
        return DiffModule{matrix_from_json(member(j, "A", ""), p, N, "/A"), sigma,
                          region_from_json(j.contains("region") ? j["region"] : json(), p, N, "/region")};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        parse_fail("/q", e.what());
    }
}

json to_json(const DiffModule& mod) {
    return {{"p", mod.prime()},
            {"q", to_json(mod.sigma.q())},
            {"h", to_json(mod.sigma.h())},
            {"A", to_json(mod.A)},
            {"region", to_json(mod.region)}};
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Parse, what + ": " + e.what());
    }
}

}  // namespace padq
