#pragma once

#include "cribq/medium.hpp"
#include "cribq/qubit.hpp"

#include <complex>
#include <utility>

namespace cribq {

// Closed-form results for compression of a time-bin qubit. Times are in
// δt, rates in 1/δt, and δt itself is carried so that physical units can be
// plugged in directly.

struct TransverseParams {
    double eta = 1.0;
    double alpha_o_L = 0.0;
    double gamma_eg = 0.0;
    double t1 = 20.0;
    double tau_o = 8.0;
    double delta_k_L = 0.0;
    double delta_k_over_alpha_o = 0.0;
    double Delta_inh = 10.0;
    double delta_t = 1.0;
};

struct LongitudinalParams {
    double eta = 1.0;
    double zeta_over_chi = 0.0;
    double gamma_eg = 0.0;
    double t1 = 20.0;
    double tau_o = 8.0;
    double delta_k_over_chi = 0.0;  // δkL/Δ_inh, a time
    double Delta_inh = 10.0;        // χL
    double delta_t = 1.0;
};

/// Both throw DomainError for a medium of the other kind.
TransverseParams transverse_params(const MediumConfig& medium, double eta, double t1, double tau_o);
LongitudinalParams longitudinal_params(const MediumConfig& medium, double eta, double t1, double tau_o);

/// Reversal/compression mode-matching efficiency 4η/(1+η)².
double epsilon_o(double eta);

/// Gaussian retardation ½γ(1+η)(δt/η)² of the echo peak under dephasing.
double retardation(double eta, double gamma_eg, double delta_t);

/// exp{−(1+1/η)γ(x − τ_o − ½ηδt_R)}.
double gamma_factor_at(double x, double eta, double gamma_eg, double tau_o, double delta_t);
/// Γ evaluated at x = t1.
double gamma_factor(const TransverseParams& p);

std::complex<double> M_transverse(double delta_k_L, double delta_k_over_alpha_o, double alpha_o_L, double eta);

/// The qubit amplitudes enter only through the bin decay e^{−2(1+1/η)γτ_o}.
double efficiency_transverse(const TransverseParams& p, double alpha, double beta);
double gain_transverse(const TransverseParams& p, double alpha, double beta);

double M_longitudinal(double zeta_over_chi, double eta);
double efficiency_longitudinal(const LongitudinalParams& p, double alpha, double beta);
double gain_longitudinal(const LongitudinalParams& p, double alpha, double beta);

/// τ_m = 2(ζ/χ)/Δ_inh.
double tau_m(const LongitudinalParams& p) noexcept;
/// Echo delay τ_z = δk/χ′ + τ_m/η − τ_m/η².
double tau_z(const LongitudinalParams& p) noexcept;

/// Nonlinear echo phase of the gradient medium. Throws DomainError where
/// either logarithm's argument is not positive.
double phase_Phi(double tau, const LongitudinalParams& p);

/// Carrier shifts (δω_0, δω_1) of the two recalled bins, in 1/δt. They are
/// shifts of the optical frequency, so the envelope phase advances as
/// e^{iΦ} with dΦ/dτ = −δω. Throws SingularityError on a zero denominator.
std::pair<double, double> freq_shifts(const LongitudinalParams& p);

/// Φ(T_late) − Φ(T_early) across the recalled bins.
double phase_diff_01(const LongitudinalParams& p);

/// Arrival time of the recalled α bin, which now trails the β bin by τ_o/η.
double echo_time(const TransverseParams& p);
double echo_time(const LongitudinalParams& p);
double echo_time(const MediumConfig& medium, double eta, double t1);

/// Closed-form echo at the input face, sampled on `grid`. The input is
/// interpolated linearly; the qubit overload samples it exactly.
FieldRecord echo_envelope_transverse(const FieldRecord& input, const TransverseParams& p, const TimeGrid& grid);
FieldRecord echo_envelope_transverse(const TimeBinQubit& qubit, const TransverseParams& p, const TimeGrid& grid);

/// Gradient-medium echo with magnitude √η·M^(l), delay τ_z and phase e^{iΦ}.
/// Samples where Φ is undefined are set to zero; the global phase is
/// arbitrary.
FieldRecord echo_envelope_longitudinal(const TimeBinQubit& qubit, const LongitudinalParams& p,
                                       const TimeGrid& grid);

/// Output of symmetric reversal (η = 1): bits exchanged and the phase
/// mapped to −(φ + 2ω_egτ_o), wrapped to (−π, π].
TimeBinQubit symmetric_crib_transform(const TimeBinQubit& qubit, double omega_eg_tau_o);

/// Wraps an angle to (−π, π].
double wrap_phase(double angle) noexcept;

}  // namespace cribq
