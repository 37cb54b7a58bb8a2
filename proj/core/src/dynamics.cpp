#include "cribq/dynamics.hpp"

#include "cribq/analytic.hpp"
#include "cribq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cribq {

namespace {

// φ1(x) = (1 − e^{−x})/x and φ2(x) = (x − 1 + e^{−x})/x², with series near 0.
void phi_functions(cd x, cd& phi1, cd& phi2)
{
    if (std::abs(x) < 0.5) {
        cd term = 1.0;
        phi1 = 0.0;
        phi2 = 0.0;
        // φ1 = Σ (−x)^k/(k+1)!, φ2 = Σ (−x)^k/(k+2)!
        double f1 = 1.0;
        double f2 = 2.0;
        for (int k = 0; k < 18; ++k) {
            phi1 += term / f1;
            phi2 += term / f2;
            term *= -x;
            f1 *= k + 2;
            f2 *= k + 3;
        }
        return;
    }
    const cd e = std::exp(-x);
    phi1 = (1.0 - e) / x;
    phi2 = (x - 1.0 + e) / (x * x);
}

// Exponential integrator for ḃ = −(iΔ + γ)b + D(t) with D linear across a
// step: b' = E b + a D_n + c D_{n+1}. The recursion runs on the pre-drive
// part p = E b + a D, so each step touches every node once.
struct CellKernel {
    std::vector<double> er, ei;   // E
    std::vector<double> kr, ki;   // E c + a
    std::vector<double> cr, ci;   // c
    std::vector<double> w;
    double csum_r = 0.0, csum_i = 0.0;  // Σ w c

    void build(const double* detuning, const std::vector<double>& weights, double gamma, double h)
    {
        const std::size_t n = weights.size();
        er.resize(n), ei.resize(n), kr.resize(n), ki.resize(n), cr.resize(n), ci.resize(n);
        w = weights;
        csum_r = csum_i = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const cd x = cd(gamma, detuning[m]) * h;
            cd p1, p2;
            phi_functions(x, p1, p2);
            const cd e = std::exp(-x);
            const cd a = h * (p1 - p2);
            const cd c = h * p2;
            const cd k = e * c + a;
            er[m] = e.real(), ei[m] = e.imag();
            kr[m] = k.real(), ki[m] = k.imag();
            cr[m] = c.real(), ci[m] = c.imag();
            csum_r += w[m] * c.real();
            csum_i += w[m] * c.imag();
        }
    }
};

// Sends the field samples `field` (entering the cell) through one cell of
// width h, replacing them with the exiting field and advancing the cell's
// coherences `b` across the whole record.
void propagate_cell(const CellKernel& k, cd* b, std::size_t n, double sqrt_zeta, double h, std::vector<cd>& field)
{
    const double zeta = sqrt_zeta * sqrt_zeta;
    const double half = 0.5 * h * zeta;

    std::vector<double> pr(n), pi(n);
    // Instantaneous field relation at the first sample.
    double p0r = 0.0, p0i = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        p0r += k.w[m] * b[m].real();
        p0i += k.w[m] * b[m].imag();
    }
    cd d = sqrt_zeta * field[0] - half * cd(p0r, p0i);
    field[0] -= h * sqrt_zeta * cd(p0r, p0i);
    for (std::size_t m = 0; m < n; ++m) {
        pr[m] = b[m].real() - (k.cr[m] * d.real() - k.ci[m] * d.imag());
        pi[m] = b[m].imag() - (k.cr[m] * d.imag() + k.ci[m] * d.real());
    }

    const cd denom = 1.0 + half * cd(k.csum_r, k.csum_i);
    for (std::size_t t = 1; t < field.size(); ++t) {
        const double dr = d.real(), di = d.imag();
        double qr = 0.0, qi = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double nr = k.er[m] * pr[m] - k.ei[m] * pi[m] + k.kr[m] * dr - k.ki[m] * di;
            const double ni = k.er[m] * pi[m] + k.ei[m] * pr[m] + k.kr[m] * di + k.ki[m] * dr;
            pr[m] = nr;
            pi[m] = ni;
            qr += k.w[m] * nr;
            qi += k.w[m] * ni;
        }
        const cd q(qr, qi);
        d = (sqrt_zeta * field[t] - half * q) / denom;
        const cd p = q + cd(k.csum_r, k.csum_i) * d;
        field[t] -= h * sqrt_zeta * p;
    }
    for (std::size_t m = 0; m < n; ++m)
        b[m] = cd(pr[m], pi[m]) + cd(k.cr[m], k.ci[m]) * d;
}

// Sweeps `field` through the cells in the given order.
void sweep(AtomState& s, double h_t, std::vector<cd>& field, bool far_to_near)
{
    const double sqrt_zeta = std::sqrt(s.zeta);
    const std::size_t n = static_cast<std::size_t>(s.nodes);
    CellKernel kernel;
    const bool shared = s.kind == BroadeningKind::transverse;
    if (shared)
        kernel.build(s.detuning.data(), s.weights, s.gamma, h_t);
    for (int j = 0; j < s.nz; ++j) {
        const int cell = far_to_near ? s.nz - 1 - j : j;
        if (!shared)
            kernel.build(s.detuning.data() + static_cast<std::size_t>(cell) * n, s.weights, s.gamma, h_t);
        propagate_cell(kernel, s.b.data() + static_cast<std::size_t>(cell) * n, n, sqrt_zeta, s.cell, field);
    }
}

}  // namespace

ProtocolSchedule resolve_schedule(const ProtocolSchedule& in, const TimeBinQubit& qubit, const MediumConfig& medium)
{
    ProtocolSchedule s = in;
    if (!(s.eta > 0.0) || !std::isfinite(s.eta))
        throw DomainError("compression parameter eta must be positive");
    const double ready = qubit.tau_o() + kTruncationWidths * qubit.delta_t();
    if (!(s.t1 > ready)) {
        std::ostringstream os;
        os << "switch time t1 = " << s.t1 << " must exceed tau_o + 4 dt = " << ready;
        throw DomainError(os.str());
    }
    if (s.steps_per_dt < 1)
        throw ResolutionError("steps_per_dt must be positive");
    if (s.steps_per_dt < 4.0 * std::max(1.0, s.eta)) {
        std::ostringstream os;
        os << "a compressed bin of width dt/" << s.eta << " needs at least " << std::ceil(4.0 * std::max(1.0, s.eta))
           << " steps per dt, got " << s.steps_per_dt;
        throw ResolutionError(os.str());
    }
    if (s.nz == 0)
        s.nz = medium.kind == BroadeningKind::transverse ? 128 : 1024;
    if (s.nz < 1)
        throw ResolutionError("nz must be positive");
    if (s.detuning_nodes == 0) {
        // Keep the center spacing at 80% of the permitted maximum.
        const double u_max = (2.0 / std::numbers::pi) * std::atan(s.span_factor);
        const double n = medium.Delta_inh * std::numbers::pi * u_max / (0.8 * kMaxCenterSpacing);
        const int odd = 2 * static_cast<int>(std::ceil(0.5 * (n - 1.0))) + 1;
        s.detuning_nodes = std::max(kDefaultDetuningNodes, odd);
    }
    const double t_echo = echo_time(medium, s.eta, s.t1);
    if (s.t_max == 0.0)
        s.t_max = t_echo + (kTruncationWidths + 2.0) / s.eta + 1.0;
    return s;
}

TimeGrid simulation_grid(const ProtocolSchedule& s)
{
    return TimeGrid::anchored(kLeadTime, s.t_max, s.step(), s.t1);
}

AtomState initial_state(const MediumConfig& medium, const ProtocolSchedule& s)
{
    validate(medium);
    AtomState a;
    a.kind = medium.kind;
    a.time = kLeadTime;
    a.nz = s.nz;
    a.cell = 1.0 / s.nz;
    a.zeta = medium.zeta();
    a.gamma = medium.gamma_eg;
    a.z.resize(static_cast<std::size_t>(s.nz));
    const double origin = medium.kind == BroadeningKind::transverse ? 0.0 : -0.5;
    for (int j = 0; j < s.nz; ++j)
        a.z[static_cast<std::size_t>(j)] = origin + (j + 0.5) * a.cell;

    if (medium.kind == BroadeningKind::transverse) {
        const DetuningGrid g = detuning_grid(medium, s.detuning_nodes, s.span_factor);
        a.nodes = static_cast<int>(g.size());
        a.weights = g.weights;
        a.detuning.reserve(static_cast<std::size_t>(s.nz) * g.size());
        for (int j = 0; j < s.nz; ++j)
            a.detuning.insert(a.detuning.end(), g.nodes.begin(), g.nodes.end());
    } else {
        a.nodes = 1;
        a.weights = {1.0};
        a.detuning.resize(static_cast<std::size_t>(s.nz));
        for (int j = 0; j < s.nz; ++j)
            a.detuning[static_cast<std::size_t>(j)] = longitudinal_detuning(a.z[static_cast<std::size_t>(j)], medium.chi());
    }
    a.b.assign(a.detuning.size(), cd{});
    return a;
}

Absorption absorb(const FieldRecord& input, const MediumConfig& medium, const ProtocolSchedule& s)
{
    const TimeGrid grid = simulation_grid(s);
    if (!input.grid().same_as(grid))
        throw GridMismatchError("input must be sampled on the simulation grid");
    const std::size_t i1 = grid.index_of(s.t1);
    const TimeGrid window = grid.slice(0, i1);

    AtomState state = initial_state(medium, s);
    std::vector<cd> field(input.values().begin(), input.values().begin() + static_cast<std::ptrdiff_t>(i1 + 1));
    if (state.zeta > 0.0)
        sweep(state, s.step(), field, false);
    state.time = s.t1;
    return {std::move(state), FieldRecord(window, std::move(field), Direction::forward, Probe::output_face)};
}

AtomState apply_switch(const AtomState& in, const MediumConfig& medium, const ProtocolSchedule& s)
{
    AtomState out = in;
    const std::size_t n = static_cast<std::size_t>(out.nodes);
    for (int j = 0; j < out.nz; ++j) {
        const cd ramp = std::polar(1.0, medium.delta_k_L * out.z[static_cast<std::size_t>(j)]);
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + m;
            out.b[idx] *= ramp;
            out.detuning[idx] *= -s.eta;
        }
    }
    return out;
}

FieldRecord retrieve(AtomState& state, const MediumConfig& medium, const ProtocolSchedule& s)
{
    const double needed = echo_time(medium, s.eta, s.t1) + kTruncationWidths / s.eta;
    if (s.t_max < needed) {
        std::ostringstream os;
        os << "retrieval window ends at " << s.t_max << " before the echo has left the medium at " << needed;
        throw WindowError(os.str());
    }
    const TimeGrid grid = simulation_grid(s);
    const TimeGrid window = grid.slice(grid.index_of(s.t1), grid.size - 1);
    std::vector<cd> field(window.size);
    if (state.zeta > 0.0)
        sweep(state, s.step(), field, true);
    state.time = window.back();
    return FieldRecord(window, std::move(field), Direction::backward, Probe::input_face);
}

double excitation_norm(const AtomState& state) noexcept
{
    double total = 0.0;
    const std::size_t n = static_cast<std::size_t>(state.nodes);
    for (std::size_t idx = 0; idx < state.b.size(); ++idx)
        total += state.weights[idx % n] * std::norm(state.b[idx]);
    return total * state.cell;
}

RunResult run_protocol(const TimeBinQubit& qubit, const MediumConfig& medium, const ProtocolSchedule& schedule)
{
    RunResult r;
    r.schedule = resolve_schedule(schedule, qubit, medium);
    const TimeGrid grid = simulation_grid(r.schedule);
    r.input = sample_input_envelope(qubit, grid);

    Absorption abs = absorb(r.input, medium, r.schedule);
    r.transmitted = std::move(abs.transmitted);
    r.stored_excitation = excitation_norm(abs.state);

    const std::size_t i1 = grid.index_of(r.schedule.t1);
    for (std::size_t i = i1 + 1; i < grid.size; ++i)
        r.forward_leak += std::norm(r.input[i]) * grid.step;

    AtomState switched = apply_switch(abs.state, medium, r.schedule);
    r.echo = retrieve(switched, medium, r.schedule);
    r.residual_excitation = excitation_norm(switched);
    r.echo_peak_time = centroid(r.echo);
    r.predicted_echo_time = echo_time(medium, r.schedule.eta, r.schedule.t1);
    return r;
}

}  // namespace cribq
