#pragma once

// The twelve acceptance checks, shared by the acceptance test binary and the
// make-goldens command.

#include <cstdint>
#include <string>
#include <vector>

namespace uqres {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    // Worst observed deviation (or ratio, for the Trotter check) and the
    // bound it was held to.
    double metric = 0.0;
    double threshold = 0.0;
    std::string detail;
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, std::uint64_t seed = 20240601);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240601);

} // namespace uqres
