#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtop {

// one verification property: headline measurement against its pinned bound
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;
    double tolerance = 0;
    std::string detail;
};

// each check is deterministic for a fixed seed
CheckResult checkVariationality(std::uint64_t seed);
CheckResult checkZermelo(std::uint64_t seed);
CheckResult checkAutoparallelConditions(std::uint64_t seed);
CheckResult checkClosure(std::uint64_t seed);
CheckResult checkConservation(std::uint64_t seed);
CheckResult checkParametrizationIndependence(std::uint64_t seed);
CheckResult checkTensorEquivalence(std::uint64_t seed);
CheckResult checkCovariance(std::uint64_t seed);
CheckResult checkJetTransform(std::uint64_t seed);
CheckResult checkIntegratorOrder(std::uint64_t seed);
CheckResult checkHomogenization(std::uint64_t seed);

// suite in {variationality, zermelo, covariance, conservation, equivalence,
// autoparallel, all}; throws ConfigParse on an unknown name
std::vector<CheckResult> runSuite(const std::string& suite, std::uint64_t seed);

} // namespace mtop
