#pragma once

#include "cribq/medium.hpp"
#include "cribq/qubit.hpp"

#include <vector>

namespace cribq {

// Normalized light–atom model, rotating at line center, c → ∞ in the
// co-moving frame, medium length 1:
//
//   ∂_s A  = −√ζ Σ_m w_m b_m            (s: distance travelled by the field)
//   ∂_t b_m = −(iΔ_m + γ) b_m + √ζ A
//
// With this scaling Σ_cells h Σ_m w_m |b_m|² is the stored photon number.

/// Switch time, compression parameter and grid resolution of one run.
struct ProtocolSchedule {
    double t1 = 20.0;
    double eta = 1.0;
    /// End of the retrieval window; 0 selects echo time + 6/η + 1.
    double t_max = 0.0;
    int steps_per_dt = 32;
    /// Spatial cells; 0 selects 128 (transverse) or 1024 (longitudinal).
    int nz = 0;
    /// Detuning nodes; 0 selects 201, or more where a broad line needs them.
    int detuning_nodes = 0;
    double span_factor = kDefaultSpanFactor;

    double step() const noexcept { return 1.0 / steps_per_dt; }

    bool operator==(const ProtocolSchedule&) const = default;
};

/// Start of every simulation grid, in δt.
inline constexpr double kLeadTime = -(kTruncationWidths + 1.0);

/// Fills defaulted fields and checks t1 > τ_o + 4δt and η > 0 (DomainError),
/// and that a compressed bin spans at least four steps (ResolutionError).
ProtocolSchedule resolve_schedule(const ProtocolSchedule& schedule, const TimeBinQubit& qubit,
                                  const MediumConfig& medium);

/// Grid on [kLeadTime, t_max] with t1 as an exact sample.
TimeGrid simulation_grid(const ProtocolSchedule& resolved);

/// Atomic coherences over (cell × detuning node). A longitudinal medium has
/// one node per cell whose detuning follows the cell position.
struct AtomState {
    BroadeningKind kind = BroadeningKind::transverse;
    double time = 0.0;
    int nz = 0;
    int nodes = 0;
    double cell = 0.0;
    double zeta = 0.0;
    double gamma = 0.0;
    std::vector<double> z;          // cell centers
    std::vector<double> weights;    // per node
    std::vector<double> detuning;   // nz × nodes
    std::vector<cd> b;              // nz × nodes

    cd& at(int cell_index, int node) noexcept { return b[static_cast<std::size_t>(cell_index) * nodes + node]; }
    const cd& at(int cell_index, int node) const noexcept
    {
        return b[static_cast<std::size_t>(cell_index) * nodes + node];
    }
};

/// Ground-state atoms on the resolved grids.
AtomState initial_state(const MediumConfig& medium, const ProtocolSchedule& resolved);

struct Absorption {
    AtomState state;
    FieldRecord transmitted;
};

/// Propagates `input` through the medium up to t1. The input must be sampled
/// on simulation_grid(); its samples after t1 are not absorbed.
Absorption absorb(const FieldRecord& input, const MediumConfig& medium, const ProtocolSchedule& resolved);

/// Imprints e^{iδk z} and maps every detuning Δ to −ηΔ. z is measured from
/// the input face (transverse) or from the medium center (longitudinal).
AtomState apply_switch(const AtomState& state, const MediumConfig& medium, const ProtocolSchedule& resolved);

/// Backward field at the input face on [t1, t_max], with the atoms evolved
/// through the window in place. Throws WindowError if the window ends before
/// the predicted echo has left the medium.
FieldRecord retrieve(AtomState& state, const MediumConfig& medium, const ProtocolSchedule& resolved);

/// Σ h Σ w |b|².
double excitation_norm(const AtomState& state) noexcept;

struct RunResult {
    FieldRecord input;
    FieldRecord transmitted;
    FieldRecord echo;
    double stored_excitation = 0.0;    // at t1, before the switch
    double residual_excitation = 0.0;  // at t_max
    double forward_leak = 0.0;         // input energy arriving after t1
    double echo_peak_time = 0.0;       // centroid of |A_−|²
    double predicted_echo_time = 0.0;
    ProtocolSchedule schedule;
};

RunResult run_protocol(const TimeBinQubit& qubit, const MediumConfig& medium, const ProtocolSchedule& schedule);

}  // namespace cribq
