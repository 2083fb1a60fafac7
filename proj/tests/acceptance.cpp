// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.

#include <cstdio>
#include <cstdlib>

#include "ergg/acceptance.hpp"

int main(int argc, char** argv)
{
    ergg::acceptance::Options opt;
    if (argc > 1) {
        opt.seed = std::strtoull(argv[1], nullptr, 10);
    }
    int failures = 0;
    ergg::acceptance::run_all(opt, [&](ergg::acceptance::CriterionResult const& r) {
        std::printf("[%s] %2d  %-88s (%.2f s / %.0f s)\n      %s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.limit_seconds, r.detail.c_str());
        std::fflush(stdout);
        failures += r.passed ? 0 : 1;
    });
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
