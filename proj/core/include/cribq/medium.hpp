#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cribq {

enum class BroadeningKind { transverse, longitudinal };

const char* to_string(BroadeningKind kind) noexcept;

/// Broadening geometry and depth parameters. Frequencies are in 1/δt and the
/// medium length is the unit of z. Build through make_transverse() or
/// make_longitudinal(); both validate.
struct MediumConfig {
    BroadeningKind kind = BroadeningKind::transverse;
    double Delta_inh = 10.0;      // transverse half-width, or χL for longitudinal
    double alpha_o_L = 0.0;       // transverse only
    double zeta_over_chi = 0.0;   // longitudinal only
    double gamma_eg = 0.0;
    double delta_k_L = 0.0;

    double chi() const noexcept { return Delta_inh; }
    /// δk/α_o for the transverse kind; zero when α_oL = 0.
    double delta_k_over_alpha_o() const noexcept;
    /// Coupling ζ of the normalized equations (see dynamics.hpp).
    double zeta() const noexcept;

    bool operator==(const MediumConfig&) const = default;
};

/// Throws DomainError for negative rates or Δ_inh·δt < 5.
MediumConfig make_transverse(double Delta_inh, double alpha_o_L, double gamma_eg, double delta_k_L = 0.0);
MediumConfig make_longitudinal(double Delta_inh, double zeta_over_chi, double gamma_eg, double delta_k_L = 0.0);

/// Re-checks a hand-assembled config. Returns a warning (empty if none)
/// when Δ_inh·δt is in [5, 10).
std::string validate(const MediumConfig& medium);

/// Lorentzian line G(Δ) = Δ_inh / (π(Δ_inh² + Δ²)).
double lorentzian_profile(double Delta, double Delta_inh);

/// Field absorption coefficient times L at offset ν from line center.
/// Throws KindError for a longitudinal medium.
std::complex<double> absorption_coefficient_transverse(double nu, const MediumConfig& medium);

struct DetuningGrid {
    std::vector<double> nodes;
    std::vector<double> weights;

    double weight_sum() const noexcept;
    std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr int kDefaultDetuningNodes = 201;
inline constexpr double kDefaultSpanFactor = 50.0;
/// Largest permitted node spacing at line center, in 1/δt.
inline constexpr double kMaxCenterSpacing = 0.2;

/// Tangent-mapped midpoint rule Δ = Δ_inh·tan(πu/2) on |Δ| ≤ span·Δ_inh.
/// The truncated tail is not renormalized. Throws ResolutionError if n is
/// even, below 51, or leaves the center spacing ≥ 0.2/δt, and when span < 20.
DetuningGrid detuning_grid(const MediumConfig& medium, int n_nodes = kDefaultDetuningNodes,
                           double span_factor = kDefaultSpanFactor);

/// Δ(z) = −χz on z ∈ [−½, ½]; RangeError outside.
double longitudinal_detuning(double z, double chi);

/// κ_eff: α_oL for transverse media, 2πζ/χ for longitudinal ones.
double effective_depth(const MediumConfig& medium) noexcept;

}  // namespace cribq
