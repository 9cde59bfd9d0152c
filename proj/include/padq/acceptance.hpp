#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace padq {

struct AcceptanceParams {
    unsigned p = 3;        // prime for the randomized suites (criteria 7-10)
    std::int64_t N = 40;   // target absolute precision
    std::int64_t M = 200;  // base truncation order (criterion 2 for p = 3, 5)
    std::uint64_t seed = 1;
    std::vector<int> only;  // empty: all ten
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceParams& params,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace padq
