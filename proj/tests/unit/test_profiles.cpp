#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

TEST_CASE("q = 1 gives the constant |h|") {
    DifferenceOperator s(Padic::one(3), Z(3, 9));
    auto prof = sigma_radius_profile(s, Z(3, 5), LogRadius::exponent(-2), LogRadius::exponent(3));
    REQUIRE(prof.pieces.size() == 1);
    CHECK(prof.pieces[0].beta == 0);
    CHECK(prof.at(0) == LogRadius::exponent(2));
    CHECK(prof.breakpoints().empty());
}

TEST_CASE("centered at the fixed point the profile is |q-1| rho") {
    const unsigned p = 3;
    DifferenceOperator s(Z(p, 4), Z(p, 3));
    Padic a = *controlling_graph_endpoint(s);
    auto prof = sigma_radius_profile(s, a, LogRadius::exponent(-1), LogRadius::exponent(4));
    REQUIRE(prof.pieces.size() == 1);
    CHECK(prof.pieces[0].beta == 1);
    CHECK(prof.pieces[0].alpha == 1);
    CHECK(prof.at(mpq_class(5, 2)) == LogRadius::exponent(7, 2));
}

TEST_CASE("q = 1 + p, h = 0, c = 1: break at exponent 0, constant exponent 1 for smaller rho") {
    const unsigned p = 3;
    DifferenceOperator s(Z(p, 4), Padic::zero(p));
    auto prof = sigma_radius_profile(s, Padic::one(p), LogRadius::exponent(-2), LogRadius::exponent(2));
    REQUIRE(prof.breakpoints().size() == 1);
    CHECK(prof.breakpoints()[0] == 0);
    CHECK(prof.at(1) == LogRadius::exponent(1));
    CHECK(prof.at(2) == LogRadius::exponent(1));
    CHECK(prof.at(-1) == LogRadius::exponent(0));
    CHECK(profile_laplacian(prof, 0) == 1);  // the zero T = 0 sits on the sphere |T - 1| = 1
}

TEST_CASE("Laplacian counts the zero of (q-1)T + h on the sphere") {
    const unsigned p = 5;
    DifferenceOperator s(Z(p, 6), Z(p, -5));  // a = 1
    auto prof = sigma_radius_profile(s, Z(p, 26), LogRadius::exponent(-1), LogRadius::exponent(4));
    REQUIRE(prof.breakpoints().size() == 1);
    CHECK(prof.breakpoints()[0] == 2);
    CHECK(profile_laplacian(prof, 2) == 1);
    CHECK(profile_laplacian(prof, 1) == 0);
}

TEST_CASE("profiles agree with direct Gauss norms and are convex with integer slopes") {
    std::mt19937_64 g(37);
    for (int i = 0; i < 40; ++i) {
        unsigned p = i % 2 ? 3 : 7;
        Padic q = Padic::one(p) + Z(p, rnd(g, 1, 40)).shifted(rnd(g, 1, 3));
        Padic h = Z(p, rnd(g, -50, 50)).shifted(rnd(g, 0, 2));
        Padic c = Z(p, rnd(g, -50, 50));
        DifferenceOperator s(q, h);
        auto prof = sigma_radius_profile(s, c, LogRadius::exponent(-3), LogRadius::exponent(5));
        Series delta = recenter(Series::polynomial(p, {h, q - Padic::one(p)}), c);
        for (long k = -12; k <= 20; ++k) {
            mpq_class r(k, 4);
            CHECK(prof.at(r) == gauss_norm(delta, LogRadius(r)));
        }
        for (std::size_t k = 1; k < prof.pieces.size(); ++k) {
            CHECK(prof.pieces[k].beta <= prof.pieces[k - 1].beta);
            CHECK(prof.pieces[k].at(prof.pieces[k].from) == prof.pieces[k - 1].at(prof.pieces[k - 1].to));
        }
    }
}

TEST_CASE("stable discs") {
    DifferenceOperator s(Padic::one(3), Z(3, 3));
    CHECK_FALSE(stable_disc(s, Padic::zero(3), LogRadius::exponent(1), DiscKind::Open));
    CHECK(stable_disc(s, Padic::zero(3), LogRadius::exponent(1), DiscKind::Closed));
    CHECK(stable_disc(s, Padic::zero(3), LogRadius::exponent(0), DiscKind::Open));
    DifferenceOperator t(Z(3, 4), Z(3, 3));
    CHECK(stable_disc(t, Z(3, -1), LogRadius::exponent(40), DiscKind::Open));
}

TEST_CASE("controlling-graph endpoints") {
    CHECK(controlling_graph_endpoint(DifferenceOperator(Z(3, 4), Padic::zero(3)))->is_zero());
    CHECK(controlling_graph_endpoint(DifferenceOperator(Z(3, 4), Z(3, 3)))->agrees_with(Z(3, -1)));
    CHECK_FALSE(controlling_graph_endpoint(DifferenceOperator(Padic::one(3), Z(3, 3))).has_value());
    CHECK(code_of([] { controlling_graph_endpoint(DifferenceOperator(Padic::one(3), Padic::zero(3))); }) ==
          ErrorCode::InvalidArgument);
}
