#include "cribq/feasibility.hpp"

#include "cribq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cribq {

namespace {

FeasibilityPoint point(const FeasibilityInput& in, double broadening, double multiple)
{
    FeasibilityPoint p;
    p.multiple = multiple;
    p.eta_max = std::max(1.0, broadening / (multiple * in.linewidth_Hz));
    p.gain = p.eta_max * in.efficiency;
    return p;
}

}  // namespace

FeasibilityReport feasibility(const FeasibilityInput& in)
{
    const double values[] = {in.linewidth_Hz, in.max_broadening_Hz, in.stark_coeff_Hz_per_Vcm, in.field_V_per_cm,
                             in.efficiency, in.multiple};
    for (double v : values)
        if (!(std::isfinite(v) && v > 0.0))
            throw DomainError("feasibility inputs must be positive and finite");
    if (in.efficiency > 1.0)
        throw DomainError("efficiency must not exceed 1");

    FeasibilityReport r;
    r.broadening_Hz = std::min(in.max_broadening_Hz, in.stark_coeff_Hz_per_Vcm * in.field_V_per_cm);
    r.min_bandwidth_Hz = std::min(in.multiple * in.linewidth_Hz, r.broadening_Hz);
    r.max_bandwidth_Hz = r.broadening_Hz;
    r.min_duration_s = 1.0 / r.max_bandwidth_Hz;
    r.max_duration_s = 1.0 / r.min_bandwidth_Hz;
    const FeasibilityPoint main = point(in, r.broadening_Hz, in.multiple);
    r.eta_max = main.eta_max;
    r.gain = main.gain;
    for (double m : {2.0, 3.0, 5.0})
        r.sensitivity.push_back(point(in, r.broadening_Hz, m));
    return r;
}

}  // namespace cribq
