#include "cribq/medium.hpp"

#include "cribq/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cribq {

const char* to_string(BroadeningKind kind) noexcept
{
    return kind == BroadeningKind::transverse ? "transverse" : "longitudinal";
}

double MediumConfig::delta_k_over_alpha_o() const noexcept
{
    return alpha_o_L > 0.0 ? delta_k_L / alpha_o_L : 0.0;
}

double MediumConfig::zeta() const noexcept
{
    // α_o = 2ζ/(γ + Δ_inh) for the Lorentzian line; ζ/χ is given directly
    // for the gradient.
    if (kind == BroadeningKind::transverse)
        return 0.5 * alpha_o_L * (gamma_eg + Delta_inh);
    return zeta_over_chi * Delta_inh;
}

std::string validate(const MediumConfig& m)
{
    if (!std::isfinite(m.Delta_inh) || !std::isfinite(m.gamma_eg) || !std::isfinite(m.delta_k_L) ||
        !std::isfinite(m.alpha_o_L) || !std::isfinite(m.zeta_over_chi))
        throw DomainError("medium parameters must be finite");
    if (m.gamma_eg < 0.0)
        throw DomainError("gamma_eg must be >= 0");
    if (m.alpha_o_L < 0.0)
        throw DomainError("alpha_o_L must be >= 0");
    if (m.zeta_over_chi < 0.0)
        throw DomainError("zeta_over_chi must be >= 0");
    if (m.kind == BroadeningKind::transverse && m.zeta_over_chi != 0.0)
        throw KindError("zeta_over_chi is a longitudinal parameter");
    if (m.kind == BroadeningKind::longitudinal && m.alpha_o_L != 0.0)
        throw KindError("alpha_o_L is a transverse parameter");
    if (m.Delta_inh < 5.0) {
        std::ostringstream os;
        os << "inhomogeneous width " << m.Delta_inh << "/dt must be at least 5/dt";
        throw DomainError(os.str());
    }
    if (m.Delta_inh < 10.0)
        return "inhomogeneous width below 10/dt: closed forms assume a line much broader than the input";
    return {};
}

MediumConfig make_transverse(double Delta_inh, double alpha_o_L, double gamma_eg, double delta_k_L)
{
    MediumConfig m;
    m.kind = BroadeningKind::transverse;
    m.Delta_inh = Delta_inh;
    m.alpha_o_L = alpha_o_L;
    m.gamma_eg = gamma_eg;
    m.delta_k_L = delta_k_L;
    validate(m);
    return m;
}

MediumConfig make_longitudinal(double Delta_inh, double zeta_over_chi, double gamma_eg, double delta_k_L)
{
    MediumConfig m;
    m.kind = BroadeningKind::longitudinal;
    m.Delta_inh = Delta_inh;
    m.zeta_over_chi = zeta_over_chi;
    m.gamma_eg = gamma_eg;
    m.delta_k_L = delta_k_L;
    validate(m);
    return m;
}

double lorentzian_profile(double Delta, double Delta_inh)
{
    if (!(Delta_inh > 0.0))
        throw DomainError("Delta_inh must be positive");
    return Delta_inh / (std::numbers::pi * (Delta_inh * Delta_inh + Delta * Delta));
}

std::complex<double> absorption_coefficient_transverse(double nu, const MediumConfig& m)
{
    if (m.kind != BroadeningKind::transverse)
        throw KindError("absorption_coefficient_transverse needs a transverse medium");
    const double w = m.gamma_eg + m.Delta_inh;
    return m.alpha_o_L * w / std::complex<double>(w, -nu);
}

double DetuningGrid::weight_sum() const noexcept
{
    double s = 0.0;
    for (double w : weights)
        s += w;
    return s;
}

DetuningGrid detuning_grid(const MediumConfig& m, int n_nodes, double span_factor)
{
    if (n_nodes < 51 || n_nodes % 2 == 0)
        throw ResolutionError("detuning grid needs an odd node count of at least 51, got " +
                              std::to_string(n_nodes));
    if (!(span_factor >= 20.0))
        throw ResolutionError("detuning span factor must be at least 20");

    // Midpoint rule in u on (−u_max, u_max); dΔ·G(Δ) = du/2 exactly under
    // the map, so each weight is du/2.
    const double u_max = (2.0 / std::numbers::pi) * std::atan(span_factor);
    const double du = 2.0 * u_max / n_nodes;
    const double center_spacing = m.Delta_inh * 0.5 * std::numbers::pi * du;
    if (!(center_spacing < kMaxCenterSpacing)) {
        std::ostringstream os;
        os << "detuning node spacing at line center is " << center_spacing << "/dt with " << n_nodes
           << " nodes; it must be below " << kMaxCenterSpacing << "/dt";
        throw ResolutionError(os.str());
    }

    DetuningGrid g;
    g.nodes.resize(static_cast<std::size_t>(n_nodes));
    g.weights.assign(static_cast<std::size_t>(n_nodes), 0.5 * du);
    const int half = n_nodes / 2;
    g.nodes[static_cast<std::size_t>(half)] = 0.0;
    for (int k = 1; k <= half; ++k) {
        const double d = m.Delta_inh * std::tan(0.5 * std::numbers::pi * k * du);
        g.nodes[static_cast<std::size_t>(half + k)] = d;
        g.nodes[static_cast<std::size_t>(half - k)] = -d;
    }
    return g;
}

double longitudinal_detuning(double z, double chi)
{
    if (!(z >= -0.5 && z <= 0.5))
        throw RangeError("position outside the medium [-L/2, L/2]");
    return -chi * z;
}

double effective_depth(const MediumConfig& m) noexcept
{
    if (m.kind == BroadeningKind::transverse)
        return m.alpha_o_L;
    return 2.0 * std::numbers::pi * m.zeta_over_chi;
}

}  // namespace cribq
