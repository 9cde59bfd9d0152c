#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

TEST_CASE("hull of 1 + pT + T^2 is (0,0),(2,0)") {
    auto np = newton_polygon(poly(3, {1, 3, 1}));
    REQUIRE(np.vertices.size() == 2);
    CHECK(np.has_vertex(0, 0));
    CHECK(np.has_vertex(2, 0));
    CHECK_FALSE(np.has_vertex(1, 1));
}

TEST_CASE("a monomial has a single vertex") {
    auto np = newton_polygon(poly(5, {0, 0, 0, 75}));
    REQUIRE(np.vertices.size() == 1);
    CHECK(np.has_vertex(3, 2));
}

TEST_CASE("every point lies on or above the lower hull and slopes increase") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<HullPoint> pts;
        for (long n = 0; n < 40; ++n)
            if (rnd(g, 0, 3)) pts.push_back({n, mpq_class(rnd(g, -20, 20), rnd(g, 1, 3))});
        if (pts.size() < 2) continue;
        auto hull = lower_hull(pts);
        CHECK(hull.front().n == pts.front().n);
        CHECK(hull.back().n == pts.back().n);
        for (std::size_t i = 2; i < hull.size(); ++i) {
            mpq_class s1 = (hull[i - 1].v - hull[i - 2].v) / (hull[i - 1].n - hull[i - 2].n);
            mpq_class s2 = (hull[i].v - hull[i - 1].v) / (hull[i].n - hull[i - 1].n);
            CHECK(s1 < s2);
        }
        for (const auto& pt : pts)
            for (std::size_t i = 1; i < hull.size(); ++i)
                if (hull[i - 1].n <= pt.n && pt.n <= hull[i].n) {
                    mpq_class line = hull[i - 1].v + (hull[i].v - hull[i - 1].v) * (pt.n - hull[i - 1].n) /
                                                         (hull[i].n - hull[i - 1].n);
                    CHECK(pt.v >= line);
                }
    }
}

TEST_CASE("growth bracket of exp contains omega at several orders") {
    for (unsigned p : {3u, 5u, 7u})
        for (std::int64_t M : {16, 50, 140}) {
            Series e = series_exp(Series(p, {Padic::zero(p), Padic::one(p)}, M), 3 * M);
            CHECK(radius_estimate(e).contains(LogRadius::omega(p)));
        }
}

TEST_CASE("Gauss norm certification") {
    const unsigned p = 3;
    Series e = series_exp(Series(p, {Padic::zero(p), Padic::one(p)}, 80), 200);
    auto inside = gauss_norm_estimate(e, LogRadius::exponent(1));
    CHECK(inside.certified);
    CHECK(inside.norm == LogRadius::exponent(0));
    // beyond the radius the finite maximum proves nothing
    auto outside = gauss_norm_estimate(e, LogRadius::exponent(1, 4));
    CHECK_FALSE(outside.certified);
    CHECK(code_of([&] { gauss_norm(e, LogRadius::exponent(1, 4)); }) == ErrorCode::Uncertified);
}
