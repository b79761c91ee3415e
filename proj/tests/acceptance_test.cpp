// Acceptance gate: every release-blocking property of the library, one
// PASS/FAIL line each with the measured value against its pinned bound.
// Exit code is the number of failing properties.

#include <cstdio>
#include <exception>
#include <vector>

#include "mtop/checks.hpp"

int main() {
    const std::uint64_t seed = 20260815ull;
    std::vector<mtop::CheckResult> rs;
    try {
        rs = mtop::runSuite("all", seed);
    } catch (const std::exception& e) {
        std::printf("FAIL suite-runner: %s\n", e.what());
        return 1;
    }
    int fails = 0;
    for (const mtop::CheckResult& r : rs) {
        std::printf("%s  %-29s measured %.3e  bound %.3e  (%s)\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                    r.tolerance, r.detail.c_str());
        if (!r.pass) ++fails;
    }
    if (rs.size() != 11) {
        std::printf("FAIL check-count: expected 11 properties, got %zu\n",
                    rs.size());
        ++fails;
    }
    std::printf("%d of %zu properties failed\n", fails, rs.size());
    return fails;
}
