#pragma once

#include <vector>

namespace cribq {

/// Material inputs of the bandwidth budget, in SI-adjacent lab units.
struct FeasibilityInput {
    double linewidth_Hz = 30e3;
    double max_broadening_Hz = 10e6;
    double stark_coeff_Hz_per_Vcm = 112.1e3;
    double field_V_per_cm = 100.0;
    double efficiency = 0.69;
    /// Narrowest usable bandwidth as a multiple of the prepared linewidth.
    double multiple = 3.0;
};

struct FeasibilityPoint {
    double multiple = 0.0;
    double eta_max = 0.0;
    double gain = 0.0;
};

struct FeasibilityReport {
    /// Achievable broadening: the Stark shift, capped at max_broadening_Hz.
    double broadening_Hz = 0.0;
    double min_bandwidth_Hz = 0.0;
    double max_bandwidth_Hz = 0.0;
    double min_duration_s = 0.0;
    double max_duration_s = 0.0;
    double eta_max = 1.0;
    double gain = 0.0;
    std::vector<FeasibilityPoint> sensitivity;  // over multiples {2, 3, 5}
};

/// Throws DomainError for a nonpositive input or an efficiency above one.
FeasibilityReport feasibility(const FeasibilityInput& input);

}  // namespace cribq
