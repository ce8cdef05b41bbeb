#pragma once

#include <string>
#include <vector>

namespace confopt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Structural invariant checks: conformal symplecticity residuals, the NAG
/// contraction factor, order-of-accuracy slopes, shadow systems, stability
/// thresholds and determinant identities, and eigenvalue geometry. These are
/// the hard invariants behind the `diagnose` command.
std::vector<CheckResult> verify_structural();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace confopt
