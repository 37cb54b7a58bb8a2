#include "cribq/metrics.hpp"

#include "cribq/analytic.hpp"
#include "cribq/errors.hpp"

#include <cmath>

namespace cribq {

FidelityTarget fidelity_target(const TimeBinQubit& qubit, const MediumConfig& medium, double eta, double t1)
{
    FidelityTarget t;
    t.eta = eta;
    t.t_late = echo_time(medium, eta, t1);
    t.late_weight = std::exp(-(1.0 + 1.0 / eta) * medium.gamma_eg * qubit.tau_o());
    t.carrier_phase = (1.0 + 1.0 / eta) * qubit.omega_eg_tau_o();
    return t;
}

FidelityResult measure_fidelity(const FieldRecord& echo, const TimeBinQubit& q, const FidelityTarget& target)
{
    const double energy = norm(echo);
    if (!(energy > 0.0))
        throw ZeroEchoError("echo carries no energy");

    const TimeGrid& grid = echo.grid();
    const double t_early = target.t_late - q.tau_o() / target.eta;
    const FieldRecord early_bin = compressed_bin(q, target.eta, t_early, grid);
    const FieldRecord late_bin = compressed_bin(q, target.eta, target.t_late, grid);

    FidelityResult r;
    r.early = overlap(early_bin, echo);
    r.late = overlap(late_bin, echo);
    const cd early_late = overlap(early_bin, late_bin);

    // Template u|x⟩ + v e^{iθ}|y⟩ with real u, v ≥ 0: the overlap magnitude
    // peaks when θ aligns the two projections, giving u|c_x| + v|c_y|.
    auto evaluate = [&](double u, double v, cd cu, cd cv, cd xy) {
        const double theta = std::arg(cv) - std::arg(cu);
        const double t2 = u * u + v * v + 2.0 * u * v * (std::polar(1.0, theta) * xy).real();
        const double s = u * std::abs(cu) + v * std::abs(cv);
        return std::pair{t2 > 0.0 ? s * s / (t2 * energy) : 0.0, theta};
    };

    const double a = q.alpha() * target.late_weight;
    const double b = q.beta();
    // Bit-flipped recall: β leads, α trails. The σ_z angle is relative to the
    // input phase φ carried on the β amplitude.
    const auto [f_flip, th_flip] = evaluate(a, b, r.late, r.early, std::conj(early_late));
    const auto [f_keep, th_keep] = evaluate(a, b, r.early, r.late, early_late);

    if (f_flip >= f_keep) {
        r.fidelity = f_flip;
        r.envelope_theta = wrap_phase(th_flip - q.phi());
        r.bit_flip = true;
    } else {
        r.fidelity = f_keep;
        r.envelope_theta = wrap_phase(th_keep - q.phi());
        r.bit_flip = false;
    }
    r.fidelity = std::min(r.fidelity, 1.0);
    r.theta = wrap_phase(r.envelope_theta + target.carrier_phase);
    return r;
}

double measure_efficiency(const RunResult& result, const FieldRecord& input)
{
    const double in = norm(input);
    return in > 0.0 ? norm(result.echo) / in : 0.0;
}

double measure_gain(double efficiency, double eta) noexcept
{
    return efficiency * eta;
}

namespace {

BinReport bin_report(const FieldRecord& echo, double center, double half_width, const cd& projection)
{
    BinReport b;
    b.center = center;
    const TimeGrid& g = echo.grid();
    for (std::size_t i = 0; i < g.size; ++i)
        if (std::abs(g.at(i) - center) <= half_width)
            b.energy += std::norm(echo[i]) * g.step;
    b.phase = std::arg(projection);
    return b;
}

}  // namespace

MetricReport measure(const RunResult& result, const TimeBinQubit& qubit, const MediumConfig& medium)
{
    const double eta = result.schedule.eta;
    MetricReport m;
    const double in = norm(result.input);
    m.efficiency = measure_efficiency(result, result.input);
    m.gain = measure_gain(m.efficiency, eta);
    m.transmitted = norm(result.transmitted) / in;
    m.residual = result.residual_excitation / in;
    m.forward_leak = result.forward_leak / in;
    m.energy_total = m.transmitted + m.efficiency + m.residual + m.forward_leak;

    const FidelityTarget target = fidelity_target(qubit, medium, eta, result.schedule.t1);
    const FidelityResult f = measure_fidelity(result.echo, qubit, target);
    m.fidelity = f.fidelity;
    m.optimal_phase_theta = f.theta;
    m.envelope_phase_theta = f.envelope_theta;
    m.bit_flip_applied = f.bit_flip;

    const double half = 0.5 * qubit.tau_o() / eta;
    m.early = bin_report(result.echo, target.t_late - qubit.tau_o() / eta, half, f.early);
    m.late = bin_report(result.echo, target.t_late, half, f.late);
    return m;
}

}  // namespace cribq
