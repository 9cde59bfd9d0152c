#include "padq/newton.hpp"

#include <algorithm>

namespace padq {

std::vector<mpq_class> NewtonPolygon::slopes() const {
    std::vector<mpq_class> s;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        s.push_back((vertices[i].v - vertices[i - 1].v) / mpq_class(vertices[i].n - vertices[i - 1].n));
    return s;
}

bool NewtonPolygon::has_vertex(std::int64_t n, const mpq_class& v) const {
    return std::any_of(vertices.begin(), vertices.end(), [&](const HullPoint& h) { return h.n == n && h.v == v; });
}

std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
    std::vector<HullPoint> h;
    for (const auto& pt : pts) {
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h.back();
            // drop b when it lies on or above the segment a -> pt
            mpq_class lhs = (b.v - a.v) * mpq_class(pt.n - a.n);
            mpq_class rhs = (pt.v - a.v) * mpq_class(b.n - a.n);
            if (lhs >= rhs)
                h.pop_back();
            else
                break;
        }
        h.push_back(pt);
    }
    return h;
}

namespace {

struct Observed {
    std::vector<HullPoint> known;   // nonzero coefficients
    std::vector<HullPoint> bounds;  // inexact zeros: true point lies at height >= v
};

Observed observe(const Series& f) {
    Observed o;
    for (std::int64_t n = f.min_index(); n <= f.max_index(); ++n) {
        const Padic& a = f.coeffs()[n - f.min_index()];
        if (a.is_exact_zero()) continue;
        if (a.is_zero())
            o.bounds.push_back({n, mpq_class(a.precision())});
        else
            o.known.push_back({n, mpq_class(a.valuation())});
    }
    return o;
}

mpq_class hull_value_at(const std::vector<HullPoint>& h, std::int64_t n, std::size_t& edge) {
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (n <= h[i].n) {
            edge = i;
            mpq_class t = mpq_class(n - h[i - 1].n) / mpq_class(h[i].n - h[i - 1].n);
            return h[i - 1].v + t * (h[i].v - h[i - 1].v);
        }
    }
    edge = h.size();
    return h.back().v;
}

}  // namespace

NewtonPolygon newton_polygon(const Series& f) {
    NewtonPolygon np;
    Observed o = observe(f);
    np.vertices = lower_hull(o.known);
    np.vertex_provisional.assign(np.vertices.size(), false);
    if (np.vertices.empty()) {
        np.provisional = !f.is_polynomial() || !o.bounds.empty();
        return np;
    }
    const auto& h = np.vertices;
    for (const auto& b : o.bounds) {
        if (b.n < h.front().n) {
            np.vertex_provisional.front() = true;
            continue;
        }
        if (b.n > h.back().n) {
            np.vertex_provisional.back() = true;
            continue;
        }
        std::size_t edge = 0;
        mpq_class hv = hull_value_at(h, b.n, edge);
        if (b.v < hv) {
            np.vertex_provisional[edge - 1] = true;
            if (edge < h.size()) np.vertex_provisional[edge] = true;
        }
    }
    if (!f.is_polynomial()) {
        auto tail = tail_model(f);
        auto sl = np.slopes();
        for (std::size_t i = 0; i < h.size(); ++i) {
            bool ok = false;
            if (tail && i + 1 < h.size()) {
                // the tail bound must stay above the edge leaving vertex i
                std::int64_t m = tail->last_index + 1;
                mpq_class edge_at = h[i].v + sl[i] * mpq_class(m - h[i].n);
                ok = tail->slope >= sl[i] && tail->bound(m) >= edge_at;
            }
            if (!ok) np.vertex_provisional[i] = true;
        }
    }
    np.provisional = std::any_of(np.vertex_provisional.begin(), np.vertex_provisional.end(), [](bool b) { return b; });
    return np;
}

bool RadiusBracket::contains_exponent(const mpq_class& r) const {
    LogRadius R(r);
    return contains(R);
}

bool RadiusBracket::contains(const LogRadius& R) const { return lower.radius_leq(R) && R.radius_leq(upper); }

std::optional<RadiusBracket> growth_bracket(const std::vector<HullPoint>& pts, std::int64_t M) {
    if (pts.empty()) return std::nullopt;
    const HullPoint& first = pts.front();
    std::vector<const HullPoint*> w1, w2;
    for (const auto& pt : pts) {
        if (2 * pt.n >= M && pt.n <= M) w2.push_back(&pt);
        if (4 * pt.n >= M && 2 * pt.n <= M) w1.push_back(&pt);
    }
    if (w2.size() < 2) return std::nullopt;
    std::optional<mpq_class> lo, hi;
    for (const auto* q : w2) {
        if (q->n == first.n) continue;
        mpq_class e = -(q->v - first.v) / mpq_class(q->n - first.n);
        if (!lo || e > *lo) lo = e;
    }
    if (!lo) return std::nullopt;
    for (const auto* a : w1)
        for (const auto* b : w2) {
            if (2 * (b->n - a->n) < M) continue;
            mpq_class e = -(b->v - a->v) / mpq_class(b->n - a->n);
            if (!hi || e > *hi) hi = e;
        }
    RadiusBracket br;
    br.upper = LogRadius(*lo);
    br.lower = hi ? LogRadius(std::max(*hi, *lo)) : LogRadius::zero_radius();
    br.exact = hi && *hi <= *lo;
    return br;
}

RadiusBracket radius_estimate(const Series& f) {
    if (f.is_polynomial()) {
        RadiusBracket br{LogRadius::infinite_radius(), LogRadius::infinite_radius(), true};
        return br;
    }
    std::int64_t M = f.order();
    if (M < 8) fail(ErrorCode::Indeterminate, "radius_estimate needs truncation order >= 8");
    Observed o = observe(f);
    std::vector<HullPoint> pts;
    for (const auto& k : o.known)
        if (k.n >= 0) pts.push_back(k);
    auto br = growth_bracket(pts, M);
    if (!br) fail(ErrorCode::Indeterminate, "fewer than 2 nonzero coefficients in the window [M/2, M]");
    return *br;
}

std::optional<TailModel> tail_model(const Series& f) {
    if (f.is_polynomial() || f.order() < 8) return std::nullopt;
    Observed o = observe(f);
    std::vector<HullPoint> pts;
    for (const auto& k : o.known)
        if (k.n >= 0) pts.push_back(k);
    auto br = growth_bracket(pts, f.order());
    if (!br || !br->lower.is_finite()) return std::nullopt;
    mpq_class hi = br->exp_hi();
    std::optional<mpq_class> c;
    for (const auto& pt : pts) {
        if (pt.n < 1) continue;
        mpq_class e = pt.v + hi * pt.n;
        if (!c || e < *c) c = e;
    }
    if (!c) return std::nullopt;
    return TailModel{-hi, *c, f.order()};
}

GaussNormResult gauss_norm_estimate(const Series& f, const LogRadius& rho) {
    GaussNormResult res;
    Observed o = observe(f);
    if (rho.is_zero_radius()) {
        if (f.min_index() < 0 && f.lowest_index() < 0) {
            res.norm = res.best_bound = LogRadius::infinite_radius();
            res.certified = true;
            return res;
        }
        Padic a0 = f.max_index() >= 0 ? f.coeff(0) : Padic::zero(f.prime());
        res.norm = norm_of(a0);
        res.best_bound = a0.is_zero() && !a0.is_exact() ? LogRadius(mpq_class(a0.precision())) : res.norm;
        res.certified = a0.is_exact() || !a0.is_zero();
        return res;
    }
    if (rho.is_infinite_radius()) {
        bool nonconst = f.lowest_index() <= f.max_index() && f.max_index() > 0;
        res.certified = f.is_polynomial();
        res.norm = res.best_bound = nonconst ? LogRadius::infinite_radius() : norm_of(f.coeff(0));
        return res;
    }
    const mpq_class& r = rho.exp();
    std::optional<mpq_class> E;
    for (const auto& k : o.known) {
        mpq_class e = k.v + r * k.n;
        if (!E || e < *E) {
            E = e;
            res.argmax = k.n;
        }
    }
    std::optional<mpq_class> B = E;
    bool certified = true;
    for (const auto& b : o.bounds) {
        mpq_class e = b.v + r * b.n;
        if (!E || e < *E) certified = false;
        if (!B || e < *B) B = e;
    }
    if (!f.is_polynomial()) {
        auto tail = tail_model(f);
        if (!tail || r + tail->slope < 0) {
            certified = false;
            B = std::nullopt;  // no usable tail bound: the norm may be unbounded
        } else {
            std::int64_t m = tail->last_index + 1;
            mpq_class tb = tail->bound(m) + r * m;
            if (!E || tb < *E) certified = false;
            if (B && tb < *B) B = tb;
        }
    }
    res.norm = E ? LogRadius(*E) : LogRadius::zero_radius();
    res.best_bound = B ? LogRadius(*B) : LogRadius::infinite_radius();
    res.certified = certified;
    return res;
}

LogRadius gauss_norm(const Series& f, const LogRadius& rho) {
    auto res = gauss_norm_estimate(f, rho);
    if (!res.certified)
        throw UncertifiedError("Gauss norm at exponent " + rho.to_string() + " not certified by the tail bound",
                               res.best_bound);
    return res.norm;
}

GaussNormResult gauss_norm_estimate(const SeriesMatrix& m, const LogRadius& rho) {
    GaussNormResult out;
    out.norm = LogRadius::zero_radius();
    out.best_bound = LogRadius::zero_radius();
    out.certified = true;
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j) {
            auto e = gauss_norm_estimate(m.at(i, j), rho);
            out.norm = max_radius(out.norm, e.norm);
            out.best_bound = max_radius(out.best_bound, e.best_bound);
            out.certified = out.certified && e.certified;
        }
    // a certified overall max only needs the winning entries' bounds to be below it
    if (!out.certified && out.best_bound == out.norm) out.certified = true;
    return out;
}

}  // namespace padq
