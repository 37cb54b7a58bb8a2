#include "cribq/config.hpp"
#include "cribq/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

using namespace cribq;

namespace {

constexpr double kPi = std::numbers::pi;

int error_line(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

std::string error_message(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("an empty config yields the defaults")
{
    const RunConfig c = parse_config("");
    CHECK(c == RunConfig{});
    CHECK(c.medium.kind == BroadeningKind::transverse);
    CHECK(c.schedule.eta == 1.0);
    CHECK(c.sweep.tolerance == 0.05);
    CHECK(c.output.format == "csv");
}

TEST_CASE("values, units and comments")
{
    const RunConfig c = parse_config(R"(# leading comment
[qubit]
alpha = 0.6
beta = 0.8          # trailing comment
phi = 0.5pi rad
tau_o = 6 dt
omega_eg_tau_o = -pi
carrier_detuning = 0.25 1/dt

[medium]
kind = longitudinal
Delta_inh = 20
zeta_over_chi = 1.5
gamma_eg = 0.01 1/dt
delta_k_L = 2pi

[schedule]
t1 = 18 dt
eta = 3
steps_per_dt = 24
nz = 512
)");
    CHECK(c.qubit.alpha == 0.6);
    CHECK(c.qubit.beta == 0.8);
    CHECK(c.qubit.phi == doctest::Approx(kPi / 2.0));
    CHECK(c.qubit.tau_o == 6.0);
    CHECK(c.qubit.omega_eg_tau_o == doctest::Approx(-kPi));
    CHECK(c.qubit.carrier_detuning == 0.25);
    CHECK(c.medium.kind == BroadeningKind::longitudinal);
    CHECK(c.medium.Delta_inh == 20.0);
    CHECK(c.medium.zeta_over_chi == 1.5);
    CHECK(c.medium.gamma_eg == 0.01);
    CHECK(c.medium.delta_k_L == doctest::Approx(2.0 * kPi));
    CHECK(c.schedule.t1 == 18.0);
    CHECK(c.schedule.eta == 3.0);
    CHECK(c.schedule.steps_per_dt == 24);
    CHECK(c.schedule.nz == 512);

    const TimeBinQubit q = c.make_qubit();
    CHECK(q.alpha() == 0.6);
    CHECK(q.tau_o() == 6.0);
}

TEST_CASE("errors carry the offending line")
{
    CHECK(error_line("[qubit]\nalpha = 1\nbogus = 3\n") == 3);
    CHECK(error_line("[nowhere]\n") == 1);
    CHECK(error_line("alpha = 1\n") == 1);
    CHECK(error_line("[qubit]\n[qubit]\n") == 2);
    CHECK(error_line("[qubit]\nalpha = 1\nalpha = 1\n") == 3);
    CHECK(error_line("[qubit]\ntau_o = 8 rad\n") == 2);
    CHECK(error_line("[medium]\nDelta_inh = 10 dt\n") == 2);
    CHECK(error_line("[qubit]\nalpha = seven\n") == 2);
    CHECK(error_line("[qubit]\nalpha = 1.0x\n") == 2);
    CHECK(error_line("[qubit]\nalpha\n") == 2);
    CHECK(error_line("[medium]\nkind = diagonal\n") == 2);
    CHECK(error_line("[schedule]\nnz = 12.5\n") == 2);
    CHECK(error_line("[output]\nformat = hdf5\n") == 2);
    CHECK(error_line("[sweep]\ntolerance = 0\n") == 2);
    CHECK(error_line("[sweep]\nmetrics = efficiency, nonsense\n") == 2);
    CHECK(error_line("[sweep]\nmetrics = gain, gain\n") == 2);
    CHECK(error_message("[qubit]\nbogus = 3\n").find("bogus") != std::string::npos);

    SUBCASE("keys of the other broadening kind are refused")
    {
        CHECK(error_line("[medium]\nkind = longitudinal\nalpha_o_L = 3\n") > 0);
        CHECK(error_line("[medium]\nkind = transverse\nzeta_over_chi = 1\n") > 0);
    }
    SUBCASE("invalid physics is reported as a config error")
    {
        CHECK_THROWS_AS(parse_config("[qubit]\nalpha = 0.9\nbeta = 0.9\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[qubit]\ntau_o = 2\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[medium]\nDelta_inh = 3\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[medium]\ngamma_eg = -1\n"), ConfigError);
    }
}

TEST_CASE("sweep axes")
{
    const RunConfig c = parse_config("[sweep]\nmetrics = gain\naxis1 = eta 0.1 10 3 log\naxis2 = alpha_o_L 0 4 5 linear\n");
    REQUIRE(c.sweep.axis1);
    REQUIRE(c.sweep.axis2);
    const std::vector<double> e = c.sweep.axis1->values();
    REQUIRE(e.size() == 3);
    CHECK(e[0] == doctest::Approx(0.1));
    CHECK(e[1] == doctest::Approx(1.0));
    CHECK(e[2] == 10.0);
    const std::vector<double> d = c.sweep.axis2->values();
    CHECK(d == std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0});
    CHECK(SweepAxis{"eta", 2.5, 9.0, 1, AxisScale::log}.values() == std::vector<double>{2.5});

    SUBCASE("invalid axes name the field")
    {
        const std::string m = error_message("[sweep]\naxis1 = speed 0 1 3 linear\n");
        CHECK(m.find("axis1") != std::string::npos);
        CHECK(m.find("speed") != std::string::npos);
        CHECK(error_line("[sweep]\naxis1 = eta 0 1 0 linear\n") == 2);
        CHECK(error_line("[sweep]\naxis1 = eta 0 1 3 cubic\n") == 2);
        CHECK(error_line("[sweep]\naxis1 = eta 0 1 3 log\n") == 2);
        CHECK(error_line("[sweep]\naxis1 = eta 1 3\n") == 2);
        CHECK(error_message("[sweep]\naxis2 = eta 1 3 3 linear\n").find("axis2") != std::string::npos);
        CHECK(error_line("[sweep]\naxis1 = eta 1 3 3 linear\naxis2 = eta 1 3 3 linear\n") == 3);
        CHECK(error_line("[medium]\nkind = transverse\n[sweep]\naxis1 = zeta_over_chi 0 1 3 linear\n") == 4);
        CHECK(error_line("[medium]\nkind = longitudinal\n[sweep]\naxis1 = alpha_o_L 0 1 3 linear\n") == 4);
    }
}

TEST_CASE("serialization round-trips")
{
    RunConfig c;
    c.qubit.alpha = 0.6;
    c.qubit.beta = 0.8;
    c.qubit.phi = 1.0 / 3.0;
    c.medium.alpha_o_L = 0.1 + 0.2;
    c.medium.delta_k_L = kPi;
    c.schedule.eta = 1.0 / 7.0;
    c.schedule.steps_per_dt = 64;
    c.sweep.metrics = {"gain", "efficiency_t"};
    c.sweep.axis1 = SweepAxis{"kappa_eff", 0.1, 4.0 * kPi, 9, AxisScale::log};
    c.sweep.tolerance = 0.125;
    c.output.path = "somewhere/else";
    CHECK(parse_config(serialize(c)) == c);

    SUBCASE("every shipped config")
    {
        int seen = 0;
        for (const auto& entry : std::filesystem::directory_iterator(CRIBQ_CONFIG_DIR)) {
            if (entry.path().extension() != ".cfg")
                continue;
            CAPTURE(entry.path().string());
            const RunConfig loaded = load_config(entry.path().string());
            CHECK(parse_config(serialize(loaded)) == loaded);
            ++seen;
        }
        CHECK(seen >= 5);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("setting sweep parameters")
{
    RunConfig t;
    t.medium = make_transverse(10.0, 2.0, 0.0);
    CHECK(with_parameter(t, "eta", 3.0).schedule.eta == 3.0);
    CHECK(with_parameter(t, "t1", 30.0).schedule.t1 == 30.0);
    CHECK(with_parameter(t, "tau_o", 5.0).qubit.tau_o == 5.0);
    CHECK(with_parameter(t, "phi", 0.2).qubit.phi == 0.2);
    CHECK(with_parameter(t, "gamma_eg", 0.1).medium.gamma_eg == 0.1);
    CHECK(with_parameter(t, "delta_k_L", 0.3).medium.delta_k_L == 0.3);
    CHECK(with_parameter(t, "Delta_inh", 50.0).medium.Delta_inh == 50.0);
    CHECK(with_parameter(t, "alpha_o_L", 7.0).medium.alpha_o_L == 7.0);
    CHECK(with_parameter(t, "kappa_eff", 7.0).medium.alpha_o_L == 7.0);
    CHECK_THROWS_AS(with_parameter(t, "speed", 1.0), ConfigError);

    RunConfig l;
    l.medium = make_longitudinal(10.0, 1.0, 0.0);
    CHECK(with_parameter(l, "kappa_eff", 2.0 * kPi).medium.zeta_over_chi == doctest::Approx(1.0));
    CHECK(with_parameter(l, "zeta_over_chi", 0.5).medium.zeta_over_chi == 0.5);
    // The original is untouched.
    CHECK(l.medium.zeta_over_chi == 1.0);
}
