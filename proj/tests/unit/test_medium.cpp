#include "cribq/errors.hpp"
#include "cribq/medium.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace cribq;
using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

TEST_CASE("lorentzian profile")
{
    CHECK(lorentzian_profile(0.0, 1.0) == doctest::Approx(1.0 / kPi));
    CHECK(lorentzian_profile(1.0, 1.0) == doctest::Approx(1.0 / (2.0 * kPi)));
    CHECK_THROWS_AS(lorentzian_profile(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(lorentzian_profile(0.0, -1.0), DomainError);

    boost::math::quadrature::tanh_sinh<double> ts;
    const double w = 10.0;
    const double span = ts.integrate([w](double d) { return lorentzian_profile(d, w); }, -50.0 * w, 50.0 * w);
    CHECK(span == doctest::Approx(0.98727).epsilon(1e-3 / 0.98727));
    CHECK(span == doctest::Approx(2.0 * std::atan(50.0) / kPi).epsilon(1e-12));
}

TEST_CASE("transverse absorption coefficient")
{
    const MediumConfig m = make_transverse(10.0, 3.0, 0.0);
    CHECK(absorption_coefficient_transverse(0.0, m) == cd(3.0, 0.0));
    const cd half = absorption_coefficient_transverse(10.0, m);
    CHECK(std::abs(half) == doctest::Approx(3.0 / std::sqrt(2.0)));
    CHECK(std::abs(absorption_coefficient_transverse(1e9, m)) < 1e-6);

    for (double nu : {0.5, 3.0, 17.0}) {
        const cd p = absorption_coefficient_transverse(nu, m);
        const cd n = absorption_coefficient_transverse(-nu, m);
        CHECK(p.real() == doctest::Approx(n.real()));
        CHECK(p.imag() == doctest::Approx(-n.imag()));
    }
    CHECK_THROWS_AS(absorption_coefficient_transverse(0.0, make_longitudinal(10.0, 1.0, 0.0)), KindError);
}

TEST_CASE("detuning grid")
{
    const MediumConfig m = make_transverse(10.0, 2.0, 0.0);
    const DetuningGrid g = detuning_grid(m, 201, 50.0);
    REQUIRE(g.size() == 201);

    SUBCASE("weights reproduce the truncated line")
    {
        CHECK(g.weight_sum() >= 0.97);
        CHECK(g.weight_sum() <= 1.0);
        CHECK(g.weight_sum() == doctest::Approx(2.0 * std::atan(50.0) / kPi).epsilon(1e-3));
        CHECK(g.nodes.front() >= -500.0 - 1e-9);
        CHECK(g.nodes.back() <= 500.0 + 1e-9);
    }

    SUBCASE("nodes are symmetric about zero")
    {
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g.nodes[i] == doctest::Approx(-g.nodes[g.size() - 1 - i]).epsilon(1e-12));
            CHECK(g.weights[i] == doctest::Approx(g.weights[g.size() - 1 - i]).epsilon(1e-12));
        }
        CHECK(g.nodes[100] == 0.0);
    }

    SUBCASE("line-response quadrature matches the Lorentzian closed form")
    {
        // ∫ G(Δ) / (γ + iΔ) dΔ = 1 / (γ + Δ_inh) over the untruncated line.
        const double gamma = 1.0;
        cd sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            sum += g.weights[i] / cd(gamma, g.nodes[i]);
        CHECK(std::abs(sum - 1.0 / (gamma + 10.0)) * (gamma + 10.0) < 1e-3);
    }

    SUBCASE("resolution limits")
    {
        CHECK_THROWS_AS(detuning_grid(m, 200, 50.0), ResolutionError);
        CHECK_THROWS_AS(detuning_grid(m, 49, 50.0), ResolutionError);
        CHECK_THROWS_AS(detuning_grid(m, 201, 10.0), ResolutionError);
        CHECK_THROWS_AS(detuning_grid(make_transverse(100.0, 2.0, 0.0), 201, 50.0), ResolutionError);
        CHECK_NOTHROW(detuning_grid(make_transverse(100.0, 2.0, 0.0), 1939, 50.0));
    }
}

TEST_CASE("longitudinal detuning is a linear ramp with a flat profile")
{
    CHECK(longitudinal_detuning(0.0, 10.0) == 0.0);
    CHECK(longitudinal_detuning(-0.5, 10.0) == doctest::Approx(5.0));
    CHECK(longitudinal_detuning(0.5, 10.0) == doctest::Approx(-5.0));
    CHECK_THROWS_AS(longitudinal_detuning(0.51, 10.0), RangeError);
    CHECK_THROWS_AS(longitudinal_detuning(-0.6, 10.0), RangeError);

    std::vector<int> hist(10, 0);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double z = -0.5 + (i + 0.5) / n;
        const double d = longitudinal_detuning(z, 10.0);
        ++hist[std::min(9, static_cast<int>((d + 5.0) / 1.0))];
    }
    for (int h : hist)
        CHECK(h == n / 10);
}

TEST_CASE("effective depth")
{
    CHECK(effective_depth(make_transverse(10.0, 2.0, 0.0)) == 2.0);
    CHECK(effective_depth(make_longitudinal(10.0, 1.0, 0.0)) == doctest::Approx(2.0 * kPi));
    CHECK(effective_depth(make_longitudinal(10.0, 3.0, 0.0)) == doctest::Approx(6.0 * kPi));
}

TEST_CASE("medium validation")
{
    CHECK_THROWS_AS(make_transverse(4.9, 2.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_transverse(10.0, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_transverse(10.0, 1.0, -0.1), DomainError);
    CHECK_THROWS_AS(make_longitudinal(10.0, -1.0, 0.0), DomainError);
    CHECK(validate(make_transverse(10.0, 2.0, 0.0)).empty());
    CHECK_FALSE(validate(make_transverse(7.0, 2.0, 0.0)).empty());

    MediumConfig mixed = make_transverse(10.0, 2.0, 0.0);
    mixed.zeta_over_chi = 1.0;
    CHECK_THROWS_AS(validate(mixed), KindError);
    MediumConfig mixed_l = make_longitudinal(10.0, 1.0, 0.0);
    mixed_l.alpha_o_L = 1.0;
    CHECK_THROWS_AS(validate(mixed_l), KindError);

    MediumConfig nan = make_transverse(10.0, 2.0, 0.0);
    nan.gamma_eg = std::nan("");
    CHECK_THROWS_AS(validate(nan), DomainError);
}
