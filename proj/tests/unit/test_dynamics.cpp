#include "cribq/analytic.hpp"
#include "cribq/dynamics.hpp"
#include "cribq/errors.hpp"
#include "cribq/medium.hpp"
#include "cribq/metrics.hpp"
#include "cribq/qubit.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace cribq;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Weight the 201-node, span-50 grid keeps of the unit Lorentzian.
const double kKeptLine = 2.0 * std::atan(50.0) / kPi;

TimeBinQubit single_bin(double tau_o = 8.0)
{
    return make_qubit(1.0, 0.0, 0.0, tau_o, 1.0, 0.0);
}

ProtocolSchedule coarse(double eta, double t1 = 20.0)
{
    ProtocolSchedule s;
    s.eta = eta;
    s.t1 = t1;
    s.steps_per_dt = 16;
    s.nz = 64;
    s.detuning_nodes = 201;
    return s;
}

double energy(const FieldRecord& f)
{
    return norm(f);
}

// Energy transmission of a unit Gaussian basis packet through a transverse
// Lorentzian medium: ∫|g̃(ν)|² e^{−Re a(ν)} dν with |g̃|² ∝ e^{−ν²/2}.
double transmitted_oracle(double Delta, double depth)
{
    auto weight = [](double nu) { return std::exp(-0.5 * nu * nu) / std::sqrt(2.0 * kPi); };
    auto f = [&](double nu) { return weight(nu) * std::exp(-depth * Delta * Delta / (Delta * Delta + nu * nu)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -12.0, 12.0, 8, 1e-12);
}

double l2_shape_error(const FieldRecord& a, const FieldRecord& b)
{
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = std::abs(a[i]);
        const double y = std::abs(b[i]);
        diff += (x - y) * (x - y);
        ref += y * y;
    }
    return diff / ref;
}

}  // namespace

TEST_CASE("schedule resolution")
{
    const TimeBinQubit q = single_bin();
    const MediumConfig t10 = make_transverse(10.0, 2.0, 0.0);

    SUBCASE("defaults")
    {
        ProtocolSchedule s;
        s.eta = 2.0;
        const ProtocolSchedule r = resolve_schedule(s, q, t10);
        CHECK(r.nz == 128);
        CHECK(r.detuning_nodes == 201);
        CHECK(r.t_max == doctest::Approx(echo_time(t10, 2.0, 20.0) + 3.0 + 1.0));
        CHECK(resolve_schedule(s, q, make_longitudinal(10.0, 1.0, 0.0)).nz == 1024);
    }
    SUBCASE("broad lines get enough nodes to resolve line center")
    {
        const ProtocolSchedule r = resolve_schedule(ProtocolSchedule{}, q, make_transverse(100.0, 2.0, 0.0));
        CHECK(r.detuning_nodes == 1939);
        CHECK(r.detuning_nodes % 2 == 1);
        const DetuningGrid g = detuning_grid(make_transverse(100.0, 2.0, 0.0), r.detuning_nodes);
        CHECK(g.nodes[g.size() / 2 + 1] - g.nodes[g.size() / 2] < kMaxCenterSpacing);
    }
    SUBCASE("explicit fields are kept")
    {
        ProtocolSchedule s = coarse(1.0);
        s.t_max = 80.0;
        const ProtocolSchedule r = resolve_schedule(s, q, t10);
        CHECK(r.nz == 64);
        CHECK(r.steps_per_dt == 16);
        CHECK(r.t_max == 80.0);
    }
    SUBCASE("domain and resolution errors")
    {
        ProtocolSchedule s;
        s.eta = 0.0;
        CHECK_THROWS_AS(resolve_schedule(s, q, t10), DomainError);
        s.eta = -1.0;
        CHECK_THROWS_AS(resolve_schedule(s, q, t10), DomainError);
        s.eta = 1.0;
        s.t1 = 12.0;
        CHECK_THROWS_AS(resolve_schedule(s, q, t10), DomainError);
        s.t1 = 12.001;
        CHECK_NOTHROW(resolve_schedule(s, q, t10));
        s.eta = 4.0;
        s.steps_per_dt = 15;
        CHECK_THROWS_AS(resolve_schedule(s, q, t10), ResolutionError);
        s.steps_per_dt = 16;
        CHECK_NOTHROW(resolve_schedule(s, q, t10));
        s.nz = -3;
        CHECK_THROWS_AS(resolve_schedule(s, q, t10), ResolutionError);
    }
}

TEST_CASE("the switch time is a grid sample")
{
    ProtocolSchedule s = coarse(1.0, 20.3);
    s = resolve_schedule(s, single_bin(), make_transverse(10.0, 1.0, 0.0));
    const TimeGrid g = simulation_grid(s);
    CHECK(g.t0 <= kLeadTime);
    CHECK(g.t0 > kLeadTime - g.step);
    CHECK(g.at(g.index_of(s.t1)) == doctest::Approx(20.3).epsilon(1e-14));
    CHECK(g.back() >= s.t_max - g.step);
}

TEST_CASE("absorption")
{
    const TimeBinQubit q = single_bin();

    SUBCASE("an empty medium passes the field through")
    {
        const MediumConfig m = make_transverse(10.0, 0.0, 0.0);
        const ProtocolSchedule s = resolve_schedule(coarse(1.0), q, m);
        const FieldRecord in = sample_input_envelope(q, simulation_grid(s));
        const Absorption a = absorb(in, m, s);
        for (std::size_t i = 0; i < a.transmitted.size(); ++i)
            CHECK(a.transmitted[i] == in[i]);
        CHECK(excitation_norm(a.state) == 0.0);
    }
    SUBCASE("a finite depth attenuates as the line shape predicts")
    {
        const MediumConfig m = make_transverse(10.0, 2.0, 0.0);
        const ProtocolSchedule s = resolve_schedule(coarse(1.0), q, m);
        const FieldRecord in = sample_input_envelope(q, simulation_grid(s));
        const Absorption a = absorb(in, m, s);
        const double out = energy(a.transmitted);
        const double stored = excitation_norm(a.state);

        CHECK(out == doctest::Approx(std::exp(-2.0)).epsilon(0.03));
        CHECK(out == doctest::Approx(transmitted_oracle(10.0, 2.0 * kKeptLine)).epsilon(0.01));
        CHECK(out + stored == doctest::Approx(energy(in)).epsilon(1e-3));
        CHECK(stored == doctest::Approx(-std::expm1(-2.0)).epsilon(0.03));
    }
    SUBCASE("a foreign grid is rejected")
    {
        const MediumConfig m = make_transverse(10.0, 2.0, 0.0);
        const ProtocolSchedule s = resolve_schedule(coarse(1.0), q, m);
        const FieldRecord in = sample_input_envelope(q, TimeGrid::anchored(kLeadTime, 40.0, 0.1, 0.0));
        CHECK_THROWS_AS(absorb(in, m, s), GridMismatchError);
    }
}

TEST_CASE("the switch flips detunings and imprints the phase ramp")
{
    const TimeBinQubit q = single_bin();
    const MediumConfig m = make_transverse(10.0, 2.0, 0.0, kPi);
    const ProtocolSchedule s = resolve_schedule(coarse(2.0), q, m);
    const Absorption a = absorb(sample_input_envelope(q, simulation_grid(s)), m, s);
    const AtomState sw = apply_switch(a.state, m, s);

    for (int j : {0, 17, 63}) {
        const cd ramp = std::polar(1.0, kPi * sw.z[static_cast<std::size_t>(j)]);
        for (int n : {0, 100, 200}) {
            const std::size_t idx = static_cast<std::size_t>(j) * sw.nodes + n;
            CHECK(sw.detuning[idx] == -2.0 * a.state.detuning[idx]);
            CHECK(std::abs(sw.at(j, n) - a.state.at(j, n) * ramp) <= 1e-15 * std::abs(a.state.at(j, n)) + 1e-300);
        }
    }
    CHECK(excitation_norm(sw) == doctest::Approx(excitation_norm(a.state)).epsilon(1e-13));

    SUBCASE("without a ramp only the detunings change")
    {
        const MediumConfig flat = make_transverse(10.0, 2.0, 0.0);
        const AtomState f = apply_switch(a.state, flat, s);
        CHECK(f.b == a.state.b);
    }
    SUBCASE("switching by eta then 1/eta restores the state")
    {
        ProtocolSchedule back = s;
        back.eta = 0.5;
        const MediumConfig flat = make_transverse(10.0, 2.0, 0.0);
        const AtomState twice = apply_switch(apply_switch(a.state, flat, s), flat, back);
        CHECK(twice.b == a.state.b);
        for (std::size_t i = 0; i < twice.detuning.size(); ++i)
            CHECK(twice.detuning[i] == doctest::Approx(a.state.detuning[i]).epsilon(1e-15));
    }
}

TEST_CASE("retrieval")
{
    const TimeBinQubit q = single_bin();

    SUBCASE("symmetric recall reaches the reversal efficiency")
    {
        const MediumConfig m = make_transverse(10.0, 4.0, 0.0);
        const RunResult r = run_protocol(q, m, coarse(1.0));
        const double expected = std::pow(-std::expm1(-4.0 * kKeptLine), 2);
        CHECK(energy(r.echo) == doctest::Approx(expected).epsilon(0.02));
        CHECK(energy(r.echo) == doctest::Approx(std::pow(-std::expm1(-4.0), 2)).epsilon(0.03));
        CHECK(r.echo_peak_time == doctest::Approx(r.predicted_echo_time).epsilon(1.0 / 16.0 / 40.0));
    }
    SUBCASE("an empty atomic state emits nothing")
    {
        const MediumConfig m = make_transverse(10.0, 4.0, 0.0);
        const ProtocolSchedule s = resolve_schedule(coarse(1.0), q, m);
        AtomState blank = initial_state(m, s);
        blank.time = s.t1;
        const FieldRecord e = retrieve(blank, m, s);
        CHECK(energy(e) == 0.0);
    }
    SUBCASE("a short window is refused")
    {
        const MediumConfig m = make_transverse(10.0, 4.0, 0.0);
        ProtocolSchedule s = coarse(1.0);
        s.t_max = 39.0;
        s = resolve_schedule(s, q, m);
        AtomState st = initial_state(m, s);
        CHECK_THROWS_AS(retrieve(st, m, s), WindowError);
        CHECK_THROWS_AS(run_protocol(q, m, s), ResolutionError);
    }
}

TEST_CASE("compression narrows the recalled bins")
{
    const TimeBinQubit q = single_bin();
    const MediumConfig m = make_transverse(10.0, 4.0, 0.0);

    auto rms_width = [](const FieldRecord& f) {
        const double c = centroid(f);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double p = std::norm(f[i]);
            const double d = f.grid().at(i) - c;
            num += p * d * d;
            den += p;
        }
        return std::sqrt(num / den);
    };

    const RunResult r1 = run_protocol(q, m, coarse(1.0));
    const RunResult r2 = run_protocol(q, m, coarse(2.0));
    const RunResult r3 = run_protocol(q, m, coarse(3.0));
    const double w1 = rms_width(r1.echo);
    CHECK(rms_width(r2.echo) == doctest::Approx(w1 / 2.0).epsilon(0.05));
    CHECK(rms_width(r3.echo) == doctest::Approx(w1 / 3.0).epsilon(0.05));

    for (const RunResult* r : {&r1, &r3})
        CHECK(std::abs(r->echo_peak_time - r->predicted_echo_time) <= 1.0 / 16.0);

    // Gain εη follows the mode-matching bound times the depth factor.
    for (double eta : {1.0 / 3.0, 0.5, 2.0, 3.0}) {
        CAPTURE(eta);
        ProtocolSchedule s = coarse(eta);
        s.steps_per_dt = 16;
        const RunResult r = run_protocol(q, m, s);
        const double m_t = -std::expm1(-0.5 * (1.0 + 1.0 / eta) * 4.0 * kKeptLine);
        const double expected = 4.0 * eta / ((1.0 + eta) * (1.0 + eta)) * m_t * m_t;
        CHECK(energy(r.echo) == doctest::Approx(expected).epsilon(0.03));
    }
}

TEST_CASE("photon number is conserved")
{
    const TimeBinQubit q = make_qubit(0.6, 0.8, 0.4, 8.0, 1.0, 0.0);
    for (double eta : {0.5, 2.0}) {
        CAPTURE(eta);
        const MediumConfig m = make_transverse(10.0, 3.0, 0.0);
        const RunResult r = run_protocol(q, m, coarse(eta));
        const double total = energy(r.transmitted) + energy(r.echo) + r.residual_excitation + r.forward_leak;
        CHECK(total == doctest::Approx(1.0).epsilon(5e-3));
    }
    const MediumConfig g = make_longitudinal(10.0, 1.0, 0.0);
    ProtocolSchedule s = coarse(2.0);
    s.nz = 512;
    const RunResult r = run_protocol(q, g, s);
    const double total = energy(r.transmitted) + energy(r.echo) + r.residual_excitation + r.forward_leak;
    CHECK(total == doctest::Approx(1.0).epsilon(5e-3));

    SUBCASE("dephasing only removes photons")
    {
        const MediumConfig lossy = make_transverse(10.0, 3.0, 0.05);
        const RunResult d = run_protocol(q, lossy, coarse(2.0));
        CHECK(energy(d.transmitted) + energy(d.echo) + d.residual_excitation + d.forward_leak < 0.99);
    }
}

TEST_CASE("gradient echo at eta = 1 is the time-reversed input")
{
    const TimeBinQubit q = make_qubit(0.8, 0.6, 0.3, 6.0, 1.0, 0.0);
    const double zc = 1.0;  // κ = 2π
    const MediumConfig m = make_longitudinal(10.0, zc, 0.0);
    ProtocolSchedule s = coarse(1.0);
    s.nz = 512;
    const RunResult r = run_protocol(q, m, s);

    const double kappa = 2.0 * kPi * zc;
    const double m2 = std::pow(-std::expm1(-kappa), 2);
    CHECK(energy(r.echo) == doctest::Approx(m2).epsilon(0.02));

    // Reversal maps input time t to echo_time − t; at η = 1 the gradient
    // delay terms cancel.
    const double t_echo = 2.0 * s.t1;
    CHECK(r.predicted_echo_time == doctest::Approx(t_echo));
    std::vector<cd> mirror(r.echo.size());
    for (std::size_t i = 0; i < mirror.size(); ++i)
        mirror[i] = std::sqrt(m2) * input_envelope_at(q, t_echo - r.echo.grid().at(i));
    const FieldRecord oracle(r.echo.grid(), std::move(mirror), Direction::backward, Probe::input_face);
    CHECK(l2_shape_error(r.echo, oracle) <= 0.02);
}

TEST_CASE("refining the grids converges")
{
    const TimeBinQubit q = single_bin();
    const MediumConfig m = make_transverse(100.0, 4.0, 0.0);
    ProtocolSchedule fine;
    fine.eta = 0.5;
    ProtocolSchedule rough = fine;
    rough.steps_per_dt = 16;
    rough.nz = 64;
    const double e_fine = energy(run_protocol(q, m, fine).echo);
    const double e_rough = energy(run_protocol(q, m, rough).echo);
    const TransverseParams p = transverse_params(m, 0.5, 20.0, 8.0);
    const double target = efficiency_transverse(p, 1.0, 0.0);
    CHECK(std::abs(e_fine - target) <= std::abs(e_rough - target) + 1e-4);
    CHECK(e_fine == doctest::Approx(target).epsilon(0.03));
}

TEST_CASE("small depth makes both geometries equivalent")
{
    // Below κ ≈ 0.1 both media act as one thin absorber of the same depth.
    const TimeBinQubit q = single_bin();
    const double kappa = 0.05;
    const RunResult t = run_protocol(q, make_transverse(10.0, kappa, 0.0), coarse(1.0));
    ProtocolSchedule s = coarse(1.0);
    s.nz = 256;
    const RunResult l = run_protocol(q, make_longitudinal(10.0, kappa / (2.0 * kPi), 0.0), s);
    CHECK(energy(l.echo) == doctest::Approx(energy(t.echo)).epsilon(0.1));
}

TEST_CASE("runs are deterministic")
{
    const TimeBinQubit q = make_qubit(0.6, 0.8, 1.1, 8.0, 1.0, 0.2);
    const MediumConfig m = make_transverse(10.0, 3.0, 0.01, 0.7);
    const RunResult a = run_protocol(q, m, coarse(2.0));
    const RunResult b = run_protocol(q, m, coarse(2.0));
    REQUIRE(a.echo.size() == b.echo.size());
    bool same = true;
    for (std::size_t i = 0; i < a.echo.size(); ++i)
        same = same && a.echo[i] == b.echo[i];
    CHECK(same);
    CHECK(a.residual_excitation == b.residual_excitation);
}
