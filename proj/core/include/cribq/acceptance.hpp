#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cribq {

/// One checked statement inside a criterion.
struct CheckPart {
    std::string name;
    bool pass = false;
    /// Set for a part that cannot pass as stated; see `detail`.
    bool known_unattainable = false;
    std::string detail;
};

struct CriterionResult {
    int number = 0;
    std::string title;
    std::vector<CheckPart> parts;
    double seconds = 0.0;

    bool pass() const noexcept;
    /// True when the criterion fails only in parts marked unattainable.
    bool expected_failure() const noexcept;
    /// Single `PASS`/`FAIL` line with every part's measured values.
    std::string line() const;
};

struct AcceptanceOptions {
    /// Directory for the emitted phase surfaces; empty writes nothing.
    std::string out_dir;
    /// Restrict to these criterion numbers; empty runs all ten.
    std::vector<int> only;
};

/// Runs the acceptance criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace cribq
