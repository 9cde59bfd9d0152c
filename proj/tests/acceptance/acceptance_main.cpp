// One line per acceptance criterion; exit status 0 only when all pass.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "padq/acceptance.hpp"

int main(int argc, char** argv) {
    padq::AcceptanceParams params;
    for (int i = 1; i < argc; ++i) params.only.push_back(std::atoi(argv[i]));
    int failed = 0;
    padq::run_acceptance(params, [&](const padq::CriterionResult& r) {
        if (!r.passed) ++failed;
        std::printf("[%s] criterion %2d  %-40s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
    });
    std::printf("%s\n", failed ? "acceptance: FAILED" : "acceptance: all criteria passed");
    return failed ? 1 : 0;
}
