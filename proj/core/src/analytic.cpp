#include "cribq/analytic.hpp"

#include "cribq/errors.hpp"

#include <cmath>
#include <numbers>

namespace cribq {

namespace {

constexpr double kSingularTolerance = 1e-12;

void require_eta(double eta)
{
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw DomainError("compression parameter eta must be positive");
}

// Amplitude weight of the α bin relative to the β bin after recall.
double bin_decay(double eta, double gamma_eg, double tau_o) noexcept
{
    return std::exp(-(1.0 + 1.0 / eta) * gamma_eg * tau_o);
}

double qubit_factor(double eta, double gamma_eg, double tau_o, double alpha, double beta) noexcept
{
    const double d = bin_decay(eta, gamma_eg, tau_o);
    return alpha * alpha * d * d + beta * beta;
}

}  // namespace

TransverseParams transverse_params(const MediumConfig& m, double eta, double t1, double tau_o)
{
    if (m.kind != BroadeningKind::transverse)
        throw DomainError("transverse parameters need a transverse medium");
    TransverseParams p;
    p.eta = eta;
    p.alpha_o_L = m.alpha_o_L;
    p.gamma_eg = m.gamma_eg;
    p.t1 = t1;
    p.tau_o = tau_o;
    p.delta_k_L = m.delta_k_L;
    p.delta_k_over_alpha_o = m.delta_k_over_alpha_o();
    p.Delta_inh = m.Delta_inh;
    return p;
}

LongitudinalParams longitudinal_params(const MediumConfig& m, double eta, double t1, double tau_o)
{
    if (m.kind != BroadeningKind::longitudinal)
        throw DomainError("longitudinal parameters need a longitudinal medium");
    LongitudinalParams p;
    p.eta = eta;
    p.zeta_over_chi = m.zeta_over_chi;
    p.gamma_eg = m.gamma_eg;
    p.t1 = t1;
    p.tau_o = tau_o;
    p.delta_k_over_chi = m.delta_k_L / m.Delta_inh;
    p.Delta_inh = m.Delta_inh;
    return p;
}

double epsilon_o(double eta)
{
    require_eta(eta);
    return 4.0 * eta / ((1.0 + eta) * (1.0 + eta));
}

double retardation(double eta, double gamma_eg, double delta_t)
{
    require_eta(eta);
    const double w = delta_t / eta;
    return 0.5 * gamma_eg * (1.0 + eta) * w * w;
}

double gamma_factor_at(double x, double eta, double gamma_eg, double tau_o, double delta_t)
{
    const double r = retardation(eta, gamma_eg, delta_t);
    return std::exp(-(1.0 + 1.0 / eta) * gamma_eg * (x - tau_o - 0.5 * eta * r));
}

double gamma_factor(const TransverseParams& p)
{
    return gamma_factor_at(p.t1, p.eta, p.gamma_eg, p.tau_o, p.delta_t);
}

std::complex<double> M_transverse(double delta_k_L, double delta_k_over_alpha_o, double alpha_o_L, double eta)
{
    require_eta(eta);
    using namespace std::complex_literals;
    const std::complex<double> num = 1.0 - std::exp(-0.5 * (1.0 + 1.0 / eta) * alpha_o_L + 1i * delta_k_L);
    const std::complex<double> den = 1.0 - 2i * delta_k_over_alpha_o * eta / (eta + 1.0);
    return num / den;
}

double efficiency_transverse(const TransverseParams& p, double alpha, double beta)
{
    const double g = gamma_factor(p);
    const double m = std::norm(M_transverse(p.delta_k_L, p.delta_k_over_alpha_o, p.alpha_o_L, p.eta));
    return g * g * m * epsilon_o(p.eta) * qubit_factor(p.eta, p.gamma_eg, p.tau_o, alpha, beta);
}

double gain_transverse(const TransverseParams& p, double alpha, double beta)
{
    return efficiency_transverse(p, alpha, beta) * p.eta;
}

double M_longitudinal(double zeta_over_chi, double eta)
{
    require_eta(eta);
    if (!(zeta_over_chi >= 0.0))
        throw DomainError("zeta_over_chi must be >= 0");
    const double kappa = 2.0 * std::numbers::pi * zeta_over_chi;
    return std::sqrt(-std::expm1(-kappa / eta) * -std::expm1(-kappa));
}

double tau_m(const LongitudinalParams& p) noexcept
{
    return 2.0 * p.zeta_over_chi / p.Delta_inh;
}

double tau_z(const LongitudinalParams& p) noexcept
{
    const double m = tau_m(p);
    return p.delta_k_over_chi / p.eta + m / p.eta - m / (p.eta * p.eta);
}

double efficiency_longitudinal(const LongitudinalParams& p, double alpha, double beta)
{
    const double g = gamma_factor_at(p.t1 + tau_z(p), p.eta, p.gamma_eg, p.tau_o, p.delta_t);
    const double m = M_longitudinal(p.zeta_over_chi, p.eta);
    return g * g * m * m * qubit_factor(p.eta, p.gamma_eg, p.tau_o, alpha, beta);
}

double gain_longitudinal(const LongitudinalParams& p, double alpha, double beta)
{
    return efficiency_longitudinal(p, alpha, beta) * p.eta;
}

double phase_Phi(double tau, const LongitudinalParams& p)
{
    require_eta(p.eta);
    const double half_width = 0.5 * p.eta * p.Delta_inh;
    const double shifted = tau - p.t1 + tau_m(p) / (p.eta * p.eta);
    const double offset = p.delta_k_over_chi / p.eta;
    const double num = half_width * std::abs(shifted - offset);
    const double den = half_width * shifted;
    // Points within rounding of a singularity count as singular.
    const double floor = kSingularTolerance * half_width * (std::abs(tau) + std::abs(p.t1) + std::abs(offset) + 1.0);
    if (!(num > floor) || !(den > floor))
        throw DomainError("nonlinear phase is undefined at tau = " + std::to_string(tau));
    return p.zeta_over_chi * (std::log(num) - std::log(den) / p.eta);
}

std::pair<double, double> freq_shifts(const LongitudinalParams& p)
{
    require_eta(p.eta);
    const double m = tau_m(p);
    auto shift = [&](double t) {
        const double a = t + m + p.delta_k_over_chi;
        const double b = t + m;
        const double floor = kSingularTolerance * (std::abs(t) + m + std::abs(p.delta_k_over_chi) + 1.0);
        if (!(std::abs(a) > floor) || !(std::abs(b) > floor))
            throw SingularityError("frequency shift denominator vanishes");
        return p.zeta_over_chi * (1.0 / a - p.eta / b);
    };
    return {shift(p.t1 - p.tau_o), shift(p.t1)};
}

double phase_diff_01(const LongitudinalParams& p)
{
    const double late = (1.0 + 1.0 / p.eta) * p.t1 + tau_z(p);
    return phase_Phi(late, p) - phase_Phi(late - p.tau_o / p.eta, p);
}

double echo_time(const TransverseParams& p)
{
    require_eta(p.eta);
    return (1.0 + 1.0 / p.eta) * p.t1 - retardation(p.eta, p.gamma_eg, p.delta_t);
}

double echo_time(const LongitudinalParams& p)
{
    require_eta(p.eta);
    return (1.0 + 1.0 / p.eta) * p.t1 + tau_z(p) - retardation(p.eta, p.gamma_eg, p.delta_t);
}

double echo_time(const MediumConfig& m, double eta, double t1)
{
    if (m.kind == BroadeningKind::transverse)
        return echo_time(transverse_params(m, eta, t1, 0.0));
    return echo_time(longitudinal_params(m, eta, t1, 0.0));
}

namespace {

template <class Input>
FieldRecord transverse_oracle(Input&& input_at, const TransverseParams& p, const TimeGrid& grid)
{
    require_eta(p.eta);
    // The recalled field is the reflected, compressed input with the
    // opposite sign of the exciting field.
    const std::complex<double> k = -std::sqrt(epsilon_o(p.eta)) *
                                   M_transverse(p.delta_k_L, p.delta_k_over_alpha_o, p.alpha_o_L, p.eta) *
                                   std::sqrt(p.eta);
    std::vector<cd> v(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i) {
        const double tau = grid.at(i);
        if (tau < p.t1)
            continue;
        const double s = p.t1 - p.eta * (tau - p.t1);
        v[i] = k * std::exp(-(1.0 + p.eta) * p.gamma_eg * (tau - p.t1)) * input_at(s);
    }
    return FieldRecord(grid, std::move(v), Direction::backward, Probe::input_face);
}

}  // namespace

FieldRecord echo_envelope_transverse(const FieldRecord& input, const TransverseParams& p, const TimeGrid& grid)
{
    const TimeGrid& g = input.grid();
    auto at = [&](double s) -> cd {
        const double x = (s - g.t0) / g.step;
        if (!(x >= 0.0) || x > static_cast<double>(g.size - 1))
            return {};
        const auto i = static_cast<std::size_t>(x);
        if (i + 1 >= g.size)
            return input[g.size - 1];
        const double f = x - static_cast<double>(i);
        return (1.0 - f) * input[i] + f * input[i + 1];
    };
    return transverse_oracle(at, p, grid);
}

FieldRecord echo_envelope_transverse(const TimeBinQubit& qubit, const TransverseParams& p, const TimeGrid& grid)
{
    return transverse_oracle([&](double s) { return input_envelope_at(qubit, s); }, p, grid);
}

FieldRecord echo_envelope_longitudinal(const TimeBinQubit& qubit, const LongitudinalParams& p, const TimeGrid& grid)
{
    require_eta(p.eta);
    const double scale = std::sqrt(p.eta) * M_longitudinal(p.zeta_over_chi, p.eta);
    const double delay = tau_z(p);
    std::vector<cd> v(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i) {
        const double tau = grid.at(i);
        const double s = p.t1 - p.eta * (tau - p.t1 - delay);
        if (s > p.t1)
            continue;
        const cd a = input_envelope_at(qubit, s);
        if (a == cd{})
            continue;
        double phase = 0.0;
        try {
            phase = phase_Phi(tau, p);
        } catch (const DomainError&) {
            continue;
        }
        v[i] = scale * std::exp(-p.gamma_eg * (tau - s)) * std::polar(1.0, phase) * a;
    }
    return FieldRecord(grid, std::move(v), Direction::backward, Probe::input_face);
}

double wrap_phase(double angle) noexcept
{
    double a = std::remainder(angle, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi)
        a += 2.0 * std::numbers::pi;
    return a;
}

TimeBinQubit symmetric_crib_transform(const TimeBinQubit& q, double omega_eg_tau_o)
{
    // α|1⟩ + e^{i(φ+θ)}β|0⟩ equals β|0⟩ + e^{−i(φ+θ)}α|1⟩ up to a global phase.
    return make_qubit(q.beta(), q.alpha(), wrap_phase(-(q.phi() + 2.0 * omega_eg_tau_o)), q.tau_o(), q.delta_t(),
                      q.omega_eg_tau_o(), q.carrier_detuning());
}

}  // namespace cribq
