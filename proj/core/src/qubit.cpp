#include "cribq/qubit.hpp"

#include "cribq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cribq {

TimeGrid TimeGrid::anchored(double lo, double hi, double step, double anchor)
{
    if (!(step > 0.0) || !(hi > lo))
        throw GridError("time grid needs step > 0 and hi > lo");
    const double below = std::ceil((anchor - lo) / step - 1e-9);
    const double above = std::ceil((hi - anchor) / step - 1e-9);
    TimeGrid g;
    g.step = step;
    g.t0 = anchor - below * step;
    g.size = static_cast<std::size_t>(below + above) + 1;
    return g;
}

std::size_t TimeGrid::index_of(double t) const noexcept
{
    if (size == 0)
        return 0;
    const double k = std::round((t - t0) / step);
    if (k <= 0.0)
        return 0;
    return std::min(static_cast<std::size_t>(k), size - 1);
}

TimeGrid TimeGrid::slice(std::size_t first, std::size_t last) const noexcept
{
    return TimeGrid{at(first), step, last - first + 1};
}

bool TimeGrid::same_as(const TimeGrid& other) const noexcept
{
    const double tol = 1e-9 * step;
    return size == other.size && std::abs(step - other.step) <= 1e-12 * step &&
           std::abs(t0 - other.t0) <= tol;
}

FieldRecord::FieldRecord(TimeGrid grid, std::vector<cd> values, Direction direction, Probe probe)
    : grid_(grid), values_(std::move(values)), direction_(direction), probe_(probe)
{
    if (!(grid_.step > 0.0))
        throw GridError("field record grid must be strictly increasing");
    if (values_.size() != grid_.size)
        throw GridError("field record has " + std::to_string(values_.size()) + " samples for a grid of " +
                        std::to_string(grid_.size));
}

FieldRecord FieldRecord::zeros(TimeGrid grid, Direction direction, Probe probe)
{
    return FieldRecord(grid, std::vector<cd>(grid.size), direction, probe);
}

FieldRecord FieldRecord::scaled(cd factor) const
{
    std::vector<cd> v(values_);
    for (auto& x : v)
        x *= factor;
    return FieldRecord(grid_, std::move(v), direction_, probe_);
}

double norm(const FieldRecord& record) noexcept
{
    double s = 0.0;
    for (const cd& a : record.values())
        s += std::norm(a);
    return s * record.grid().step;
}

cd overlap(const FieldRecord& a, const FieldRecord& b)
{
    if (!a.grid().same_as(b.grid()))
        throw GridMismatchError("overlap requires identical time grids");
    cd s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s * a.grid().step;
}

double centroid(const FieldRecord& record) noexcept
{
    double w = 0.0;
    double wt = 0.0;
    for (std::size_t i = 0; i < record.size(); ++i) {
        const double p = std::norm(record[i]);
        w += p;
        wt += p * record.grid().at(i);
    }
    return w > 0.0 ? wt / w : std::numeric_limits<double>::quiet_NaN();
}

double gaussian_envelope(double t, double width) noexcept
{
    const double x = t / width;
    return std::pow(2.0 / (std::numbers::pi * width * width), 0.25) * std::exp(-x * x);
}

TimeBinQubit make_qubit(double alpha, double beta, double phi, double tau_o, double delta_t,
                        double omega_eg_tau_o, double carrier_detuning)
{
    if (!(delta_t > 0.0))
        throw DomainError("delta_t must be positive");
    const double n = alpha * alpha + beta * beta;
    if (!(std::abs(n - 1.0) <= 1e-9)) {
        std::ostringstream os;
        os << "alpha^2 + beta^2 = " << n << ", expected 1";
        throw NormalizationError(os.str());
    }
    if (!(tau_o >= kMinSeparation * delta_t)) {
        std::ostringstream os;
        os << "bin separation tau_o = " << tau_o << " is below " << kMinSeparation << " delta_t";
        throw SeparationError(os.str());
    }
    TimeBinQubit q;
    q.alpha_ = alpha;
    q.beta_ = beta;
    q.phi_ = phi;
    q.tau_o_ = tau_o;
    q.delta_t_ = delta_t;
    q.omega_eg_tau_o_ = omega_eg_tau_o;
    q.carrier_detuning_ = carrier_detuning;
    return q;
}

namespace {

// Truncated Gaussian bin of width w centered at c, with carrier offset
// `carrier` referenced to the bin center.
cd bin_sample(double t, double c, double w, double carrier)
{
    const double x = t - c;
    if (std::abs(x) > kTruncationWidths * w)
        return {};
    return gaussian_envelope(x, w) * std::polar(1.0, -carrier * x);
}

}  // namespace

cd input_envelope_at(const TimeBinQubit& q, double t) noexcept
{
    // Analytic norm of the two-bin superposition; the cross term is the
    // Gaussian overlap exp(-(τ_o/δt)²/2).
    const double w = q.delta_t();
    const double x = q.tau_o() / w;
    const double cross = std::exp(-0.5 * x * x) * std::cos(q.phi() + q.carrier_detuning() * q.tau_o());
    const double scale = 1.0 / std::sqrt(1.0 + 2.0 * q.alpha() * q.beta() * cross);
    const cd beta_weight = q.beta() * std::polar(1.0, q.phi());
    return scale * (q.alpha() * bin_sample(t, 0.0, w, q.carrier_detuning()) +
                    beta_weight * bin_sample(t, q.tau_o(), w, q.carrier_detuning()));
}

FieldRecord sample_input_envelope(const TimeBinQubit& q, const TimeGrid& grid)
{
    const double w = q.delta_t();
    const double reach = kTruncationWidths * w;
    if (grid.size < 2 || grid.t0 > -reach + 1e-12 * w || grid.back() < q.tau_o() + reach - 1e-12 * w)
        throw GridError("input grid must cover [-4 dt, tau_o + 4 dt]");
    std::vector<cd> v(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i)
        v[i] = input_envelope_at(q, grid.at(i));
    return FieldRecord(grid, std::move(v), Direction::forward, Probe::input_face);
}

FieldRecord compressed_bin(const TimeBinQubit& q, double eta, double center, const TimeGrid& grid)
{
    if (!(eta > 0.0))
        throw DomainError("compression parameter must be positive");
    // The recalled carrier sits at -η times the input carrier offset.
    const double w = q.delta_t() / eta;
    const double carrier = -eta * q.carrier_detuning();
    std::vector<cd> v(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i)
        v[i] = bin_sample(grid.at(i), center, w, carrier);
    return FieldRecord(grid, std::move(v), Direction::backward, Probe::input_face);
}

FieldRecord compressed_template(const TimeBinQubit& q, double eta, double t_echo, double phase_prime,
                                double gamma_factor, const TimeGrid& grid)
{
    if (!(eta > 0.0))
        throw DomainError("compression parameter must be positive");
    const FieldRecord late = compressed_bin(q, eta, t_echo, grid);
    const FieldRecord early = compressed_bin(q, eta, t_echo - q.tau_o() / eta, grid);
    const cd w_early = q.beta() * std::polar(1.0, phase_prime);
    const double w_late = q.alpha() * gamma_factor;
    std::vector<cd> v(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i)
        v[i] = w_early * early[i] + w_late * late[i];
    return FieldRecord(grid, std::move(v), Direction::backward, Probe::input_face);
}

}  // namespace cribq
