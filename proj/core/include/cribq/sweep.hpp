#pragma once

#include "cribq/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cribq {

enum class SweepMode { fast, verify };

/// Closed-form value of a sweep metric at one configuration. The `_t` and
/// `_l` variants evaluate both broadening kinds at the configured κ_eff.
/// Returns NaN where the closed form is undefined (phase singularities, or
/// the longitudinal fidelity, which has none).
double analytic_metric(const RunConfig& config, const std::string& metric);

/// One table per metric, rows in axis order (axis1 outer, axis2 inner).
/// Columns: the axis values, `value` (closed form) and, in verify mode,
/// `numeric` and `residual`.
struct SweepTable {
    std::string metric;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SweepOutcome {
    std::vector<SweepTable> tables;
    /// Largest residual over all verify-mode rows; NaN entries are skipped.
    double max_residual = 0.0;
    bool within_tolerance = true;
};

/// Evaluates every grid point on at most `threads` workers. The thread count
/// has no effect on the output. Residuals are relative, except for
/// phase_diff_01 and fidelity, whose residuals are absolute.
SweepOutcome run_sweep(const RunConfig& config, SweepMode mode, int threads = 1);

/// CSV with a leading `#` comment naming the metric, mode and columns.
void write_csv(std::ostream& out, const SweepTable& table, SweepMode mode);

}  // namespace cribq
