#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cribq {

using cd = std::complex<double>;

/// Uniform time axis, in units of the basis wavepacket duration.
struct TimeGrid {
    double t0 = 0.0;
    double step = 1.0;
    std::size_t size = 0;

    double at(std::size_t i) const noexcept { return t0 + step * static_cast<double>(i); }
    double back() const noexcept { return at(size == 0 ? 0 : size - 1); }

    /// Grid with spacing `step` covering [lo, hi] and containing `anchor`
    /// exactly as one of its points.
    static TimeGrid anchored(double lo, double hi, double step, double anchor);

    /// Index of the grid point nearest to `t` (clamped to the grid).
    std::size_t index_of(double t) const noexcept;

    /// Sub-grid [first, last] (inclusive).
    TimeGrid slice(std::size_t first, std::size_t last) const noexcept;

    bool same_as(const TimeGrid& other) const noexcept;
};

enum class Direction { forward, backward };
enum class Probe { input_face, output_face };

/// Complex envelope samples of one propagating field at one face of the
/// medium, in the frame rotating at the atomic line center.
class FieldRecord {
public:
    FieldRecord() = default;
    FieldRecord(TimeGrid grid, std::vector<cd> values, Direction direction, Probe probe);

    static FieldRecord zeros(TimeGrid grid, Direction direction, Probe probe);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const cd> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cd& operator[](std::size_t i) const noexcept { return values_[i]; }
    Direction direction() const noexcept { return direction_; }
    Probe probe() const noexcept { return probe_; }

    FieldRecord scaled(cd factor) const;

private:
    TimeGrid grid_;
    std::vector<cd> values_;
    Direction direction_ = Direction::forward;
    Probe probe_ = Probe::input_face;
};

/// Σ|A|²Δt.
double norm(const FieldRecord& record) noexcept;

/// Σ conj(a)·b·Δt over identical grids; throws GridMismatchError otherwise.
cd overlap(const FieldRecord& a, const FieldRecord& b);

/// Power-weighted mean time Σ t|A|² / Σ|A|². Returns NaN for an empty field.
double centroid(const FieldRecord& record) noexcept;

/// Unit-norm Gaussian basis envelope (2/(π w²))^{1/4} exp(-(t/w)²).
double gaussian_envelope(double t, double width) noexcept;

/// Basis wavepackets are truncated at this many widths from their center.
inline constexpr double kTruncationWidths = 4.0;

/// Photonic time-bin qubit α|0⟩ + e^{iφ}β|1⟩ together with its wavepacket
/// parameters. Construct through make_qubit().
class TimeBinQubit {
public:
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double phi() const noexcept { return phi_; }
    double tau_o() const noexcept { return tau_o_; }
    double delta_t() const noexcept { return delta_t_; }
    /// Deterministic carrier phase ω_eg·τ_o, carried symbolically.
    double omega_eg_tau_o() const noexcept { return omega_eg_tau_o_; }
    /// Carrier offset from line center, in 1/δt.
    double carrier_detuning() const noexcept { return carrier_detuning_; }

private:
    friend TimeBinQubit make_qubit(double, double, double, double, double, double, double);
    TimeBinQubit() = default;

    double alpha_ = 1.0;
    double beta_ = 0.0;
    double phi_ = 0.0;
    double tau_o_ = 8.0;
    double delta_t_ = 1.0;
    double omega_eg_tau_o_ = 0.0;
    double carrier_detuning_ = 0.0;
};

/// Minimum bin separation, in basis wavepacket durations.
inline constexpr double kMinSeparation = 4.0;

/// Validates and builds a qubit. Throws NormalizationError when
/// |α²+β²−1| > 1e-9 and SeparationError when τ_o < 4δt.
TimeBinQubit make_qubit(double alpha, double beta, double phi, double tau_o, double delta_t,
                        double omega_eg_tau_o, double carrier_detuning = 0.0);

/// Point evaluation of the unit-norm input envelope sampled below.
cd input_envelope_at(const TimeBinQubit& qubit, double t) noexcept;

/// Input envelope A₊(t) at the input face: α-bin centered at t=0 and β-bin
/// at t=τ_o, each referenced to its own carrier phase. Unit norm.
/// Throws GridError unless the grid covers [-4δt, τ_o+4δt].
FieldRecord sample_input_envelope(const TimeBinQubit& qubit, const TimeGrid& grid);

/// Ideal recalled two-bin envelope: bins of width δt/η separated by τ_o/η,
/// order reversed (β-bin leads, α-bin arrives at `t_echo`), amplitude √η,
/// weights β·e^{i·phase_prime} and α·gamma_factor.
FieldRecord compressed_template(const TimeBinQubit& qubit, double eta, double t_echo,
                                double phase_prime, double gamma_factor, const TimeGrid& grid);

/// Single compressed basis bin √η·g(η(t−center)) with the recalled carrier.
FieldRecord compressed_bin(const TimeBinQubit& qubit, double eta, double center, const TimeGrid& grid);

}  // namespace cribq
