#pragma once

#include <string>
#include <vector>

namespace tclt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // empty on success unless informative
};

enum class CheckLevel { quick, full };

// Cross-route and structural invariants of the engine. `quick` keeps orders
// small for a fast smoke pass; `full` pushes every agreement check to the
// enumeration-feasible orders.
std::vector<CheckResult> run_invariant_checks(CheckLevel level);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace tclt
