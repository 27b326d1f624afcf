#pragma once

// Self-check suites behind `geophase validate`. Each check reports the
// measured quantity next to its threshold.

#include <array>
#include <string>
#include <vector>

#include "geophase/gauge.hpp"

namespace geophase {

struct CheckResult {
    std::string name;
    double measured;
    double threshold;
    bool passed;
    std::string detail;
};

enum class ValidationLevel { Fast, Full };

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::Fast;
    // Mutation switch: negates the coupling of the two-level generator handed
    // to the oracle, which must make the oracle-vs-dressed check fail.
    bool flip_coupling = false;
};

struct ValidationReport {
    ValidationLevel level;
    std::vector<CheckResult> checks;

    bool passed() const;
    std::string to_json() const;
};

ValidationReport validate(const ValidationOptions& options = {});

namespace checks {

CheckResult non_abelian_endpoint();
CheckResult abelian_endpoint();
CheckResult gauge_matrix(Subspace subspace);
CheckResult gauge_b_invariance();
CheckResult monotonicity();
CheckResult fig2_collapse();
CheckResult abelian_fidelity();
CheckResult abelian_singularity();
CheckResult non_abelian_slope();
CheckResult second_order_coefficient();
CheckResult sensitivity_abelian_limit();
CheckResult sensitivity_non_abelian_limit();

// 5 x 5 x 5 grid in (omega, x, theta), one drive period each.
CheckResult oracle_two_level(bool flip_coupling = false);
// c/omega = 1000, b = 0, theta = 1, one cycle: {+-3/2 geometric phases, +-1/2 eigenphases}.
std::array<CheckResult, 2> four_level_phases();

}  // namespace checks

}  // namespace geophase
