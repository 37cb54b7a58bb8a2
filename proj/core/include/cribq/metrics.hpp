#pragma once

#include "cribq/dynamics.hpp"
#include "cribq/medium.hpp"
#include "cribq/qubit.hpp"

namespace cribq {

/// Where the two recalled bins are expected and how the ideal recall weights
/// them. The α bin arrives at `t_late`, the β bin τ_o/η earlier.
struct FidelityTarget {
    double eta = 1.0;
    double t_late = 0.0;
    /// Amplitude of the α bin relative to the β bin, e^{−(1+1/η)γτ_o}.
    double late_weight = 1.0;
    /// Deterministic carrier phase (1+1/η)ω_egτ_o, added to the reported θ.
    double carrier_phase = 0.0;
};

FidelityTarget fidelity_target(const TimeBinQubit& qubit, const MediumConfig& medium, double eta, double t1);

struct FidelityResult {
    double fidelity = 0.0;
    /// Optimal σ_z angle including the carrier phase, wrapped to (−π, π].
    double theta = 0.0;
    /// The part of θ visible in the rotating-frame envelope.
    double envelope_theta = 0.0;
    bool bit_flip = true;
    cd early;  // projection onto the leading compressed bin
    cd late;   // projection onto the trailing compressed bin
};

/// Overlap fidelity of the renormalized echo with the ideal recalled qubit,
/// maximized over the σ_z angle and over relabeling the bins. Throws
/// ZeroEchoError for an echo without energy.
FidelityResult measure_fidelity(const FieldRecord& echo, const TimeBinQubit& qubit, const FidelityTarget& target);

/// Echo energy over input energy.
double measure_efficiency(const RunResult& result, const FieldRecord& input);

/// G = εη.
double measure_gain(double efficiency, double eta) noexcept;

struct BinReport {
    double center = 0.0;
    double energy = 0.0;  // within ±τ_o/(2η) of the center
    double phase = 0.0;   // of the projection onto the compressed bin
};

struct MetricReport {
    double efficiency = 0.0;
    double fidelity = 0.0;
    double optimal_phase_theta = 0.0;
    double envelope_phase_theta = 0.0;
    bool bit_flip_applied = true;
    double gain = 0.0;
    BinReport early;
    BinReport late;
    double transmitted = 0.0;
    double residual = 0.0;
    double forward_leak = 0.0;
    /// transmitted + echo + residual + forward leak, in units of the input.
    double energy_total = 0.0;
};

MetricReport measure(const RunResult& result, const TimeBinQubit& qubit, const MediumConfig& medium);

}  // namespace cribq
