#include "helpers.hpp"

#include "padq/padq.h"

using namespace padq;

namespace {

json take(char* s) {
    REQUIRE(s != nullptr);
    json j = json::parse(s);
    padq_string_free(s);
    return j;
}

const char* kExpSystem = R"({"p": 3, "G": [[1]], "region": {"center": 0, "outer": "0"}})";

}  // namespace

TEST_CASE("status names, version and last error") {
    CHECK(std::string(padq_version()) == "0.1.0");
    CHECK(std::string(padq_status_name(PADQ_OK)) == "ok");
    CHECK(std::string(padq_status_name(PADQ_ERR_INCOMPATIBLE)) == error_code_name(ErrorCode::Incompatible));
    CHECK(std::string(padq_status_name(static_cast<padq_status>(99))) == "unknown");
    char* out = nullptr;
    CHECK(padq_scalar_parse("1/", 3, 10, &out) == PADQ_ERR_PARSE);
    CHECK(out == nullptr);
    CHECK(std::string(padq_last_error()).size() > 0);
    CHECK(padq_scalar_parse("25/12", 4, 10, &out) == PADQ_ERR_INVALID_ARGUMENT);
    CHECK(padq_scalar_parse("25/12", 3, 10, &out) == PADQ_OK);
    CHECK(std::string(padq_last_error()).empty());
    json j = take(out);
    CHECK(j["v"] == -1);
    CHECK(padq_scalar_parse(nullptr, 3, 10, &out) == PADQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("deform, module round trip and confluence through handles") {
    padq_system* sys = nullptr;
    REQUIRE(padq_system_from_json(kExpSystem, 40, &sys) == PADQ_OK);
    char* out = nullptr;
    padq_module* mod = nullptr;
    REQUIRE(padq_deform(sys, "1+3^2", "0", 14, 40, &out, &mod) == PADQ_OK);
    json d = take(out);
    CHECK(d["certificate"]["verdict"] == "compatible");
    CHECK(d["A"].is_array());
    REQUIRE(mod != nullptr);

    REQUIRE(padq_module_to_json(mod, &out) == PADQ_OK);
    std::string text = take(out).dump();
    padq_module* mod2 = nullptr;
    REQUIRE(padq_module_from_json(text.c_str(), 40, &mod2) == PADQ_OK);

    REQUIRE(padq_module_compatible(mod2, 14, &out) == PADQ_OK);
    CHECK(take(out)["verdict"] == "compatible");
    REQUIRE(padq_confluence(mod2, "derivative", 14, 30, 0, &out) == PADQ_OK);
    json c = take(out);
    CHECK(c["precision"].get<long>() >= 30);
    Series g = series_from_json(c["G"][0][0], 3, 30);
    CHECK(g.agrees_with(Series::from_integers(3, {1})));
    CHECK(padq_confluence(mod2, "bogus", 14, 30, 0, &out) == PADQ_ERR_INVALID_ARGUMENT);

    padq_module_free(mod2);
    padq_module_free(mod);
    padq_system_free(sys);
}

TEST_CASE("incompatible deformation still reports the certificate") {
    padq_system* sys = nullptr;
    REQUIRE(padq_system_from_json(R"({"p": 3, "G": [["1/3"]]})", 30, &sys) == PADQ_OK);
    char* out = nullptr;
    padq_module* mod = nullptr;
    CHECK(padq_deform(sys, "1", "1", 10, 30, &out, &mod) == PADQ_ERR_INCOMPATIBLE);
    CHECK(mod == nullptr);
    json j = take(out);
    CHECK(j["A"].is_null());
    CHECK(j["certificate"]["verdict"] == "incompatible");
    padq_system_free(sys);
}

TEST_CASE("profile and qcalc") {
    char* out = nullptr;
    REQUIRE(padq_profile(3, "4", "0", "1", "-2", "2", 30, &out) == PADQ_OK);
    json j = take(out);
    CHECK(j["laplacian"].size() == 1);
    CHECK(j["fixed_point"]["v"] == "inf");
    REQUIRE(padq_qcalc(3, "4", "0", 3, 20, &out) == PADQ_OK);
    j = take(out);
    CHECK(scalar_from_json(j["q_int"], 3, 20).agrees_with(test::Z(3, 21)));
    CHECK(j["root_of_unity"] == false);
    CHECK(padq_profile(3, "1", "0", "1", "2", "1", 30, &out) != PADQ_OK);
}

TEST_CASE("gamma handle") {
    padq_gamma* g = nullptr;
    REQUIRE(padq_gamma_create(5, 60, 20, &g) == PADQ_OK);
    char* out = nullptr;
    REQUIRE(padq_gamma_taylor(g, &out) == PADQ_OK);
    CHECK(take(out)["series"]["coeffs"].size() > 0);
    REQUIRE(padq_gamma_g0(g, &out) == PADQ_OK);
    take(out);
    REQUIRE(padq_gamma_newton(g, &out) == PADQ_OK);
    CHECK(take(out)["g0_gauss_norms"].size() == 3);
    REQUIRE(padq_gamma_lvalues(g, 5, &out) == PADQ_OK);
    CHECK(take(out)["entries"].size() == 5);
    REQUIRE(padq_gamma_sums(g, 1, 1, 5, &out) == PADQ_OK);
    CHECK(take(out)["S"] == "25/12");
    REQUIRE(padq_gamma_residual(g, 1, 10, &out) == PADQ_OK);
    CHECK(take(out)["vanishes"] == true);
    CHECK(padq_gamma_lvalues(g, 40, &out) == PADQ_ERR_INVALID_ARGUMENT);
    padq_gamma_free(g);
}

namespace {
void count_cb(const char*, void* user) { ++*static_cast<int*>(user); }
}  // namespace

TEST_CASE("check runs selected criteria with a callback") {
    int seen = 0, all = 0;
    const int only[] = {8, 10};
    char* out = nullptr;
    REQUIRE(padq_check(5, 20, 60, 3, only, 2, count_cb, &seen, &out, &all) == PADQ_OK);
    CHECK(seen == 2);
    CHECK(all == 1);
    json j = take(out);
    CHECK(j["criteria"].size() == 2);
}
