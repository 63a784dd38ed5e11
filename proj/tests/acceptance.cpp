#include <cstdio>

#include "uqres/acceptance.hpp"

int main() {
    int failed = 0;
    for (const auto& r : uqres::run_acceptance()) {
        std::printf("%s criterion %2d: %s (metric %.3g, bound %.3g) %s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.metric, r.threshold, r.detail.c_str());
        failed += r.passed ? 0 : 1;
    }
    std::printf("%d of %d criteria passed\n", uqres::kCriterionCount - failed, uqres::kCriterionCount);
    return failed == 0 ? 0 : 1;
}
