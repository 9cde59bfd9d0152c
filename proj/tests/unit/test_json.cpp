#include "helpers.hpp"

using namespace padq;
using namespace padq::test;

TEST_CASE("expression parser") {
    CHECK(parse_expr("1+3^2") == 10);
    CHECK(parse_expr("-1/2") == mpq_class(-1, 2));
    CHECK(parse_expr("(2/3)^-2") == mpq_class(9, 4));
    CHECK(parse_expr("-3^2") == -9);
    CHECK(parse_expr("2^3^2") == 512);
    CHECK(parse_expr(" 4 * (1 - 5) / 8 ") == -2);
    CHECK(parse_expr("7") == 7);
    for (const char* bad : {"", "1+", "(1", "1/0", "2^(1/2)", "abc", "1 2", "2^1000000"})
        CHECK(code_of([&] { parse_expr(bad); }) == ErrorCode::Parse);
}

TEST_CASE("rationals to Q_p") {
    Padic x = padic_from_rational(3, mpq_class(25, 12), 20);
    CHECK(x.valuation() == -1);
    CHECK(x.is_exact() == false);
    CHECK(padic_from_rational(3, mpq_class(5, 9), 20).is_exact());
    CHECK(parse_scalar("1+3^2", 3, 10).agrees_with(Z(3, 10)));
}

TEST_CASE("round trips through JSON") {
    Padic x = Padic::from_rational(5, 7, 3, 12);
    CHECK(scalar_from_json(to_json(x), 5, 12).identical(x));
    CHECK(scalar_from_json(to_json(Padic::zero(5)), 5, 12).identical(Padic::zero(5)));
    for (const char* r : {"3/2", "inf", "-inf", "-4"}) {
        LogRadius rr = LogRadius::parse(r);
        CHECK(radius_from_json(to_json(rr)) == rr);
    }
    std::mt19937_64 g(41);
    Series f = rand_poly(g, 7, 5, 100);
    CHECK(series_from_json(to_json(f), 7, 30).agrees_with(f));
    DiffSystem sys{SeriesMatrix::scalar(poly(3, {1, 2})), Region::disc(Z(3, 1), LogRadius::exponent(1, 2))};
    DiffSystem back = system_from_json(to_json(sys), 30);
    CHECK(back.G.agrees_with(sys.G));
    CHECK(back.region.outer == sys.region.outer);
    CHECK(back.region.center.agrees_with(sys.region.center));
    DiffModule mod{SeriesMatrix::scalar(poly(3, {1, 3})), DifferenceOperator(Z(3, 4), Z(3, 3)), Region::line(3)};
    DiffModule mb = module_from_json(to_json(mod), 30);
    CHECK(mb.A.agrees_with(mod.A));
    CHECK(mb.sigma.q().agrees_with(mod.sigma.q()));
    CHECK(mb.region.outer.is_infinite_radius());
}

TEST_CASE("inputs in the compact form") {
    auto sys = system_from_json(json::parse(R"({"p": 5, "G": [["1/5", [0, "2"]], [0, 1]]})"), 20);
    CHECK(sys.rank() == 2);
    CHECK(sys.G.at(0, 0).coeff(0).valuation() == -1);
    CHECK(sys.G.at(0, 1).coeff(1).agrees_with(Z(5, 2)));
    auto mod = module_from_json(json::parse(R"({"p": 3, "q": "1+3^2", "h": 0, "A": [[[1, 9]]]})"), 20);
    CHECK(mod.sigma.q().agrees_with(Z(3, 10)));
}

TEST_CASE("parse errors name the JSON path") {
    auto msg = [](const char* text) {
        try {
            system_from_json(json::parse(text), 20);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(msg(R"({"p": 5, "G": [[1, 0], [0, "x"]]})").find("/G/1/1") != std::string::npos);
    CHECK(msg(R"({"p": 5, "G": [[1, "1/"], [0, 0]]})").find("/G/0/1") != std::string::npos);
    CHECK(msg(R"({"p": 5, "G": [[1, 0], [0]]})").find("/G/1") != std::string::npos);
    CHECK(msg(R"({"G": [[1]]})").find("'p'") != std::string::npos);
    CHECK(code_of([] { parse_json_text("{", "input"); }) == ErrorCode::Parse);
}
