#include "cribq/acceptance.hpp"

#include "cribq/analytic.hpp"
#include "cribq/config.hpp"
#include "cribq/dynamics.hpp"
#include "cribq/metrics.hpp"
#include "cribq/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace cribq {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format(const char* fmt, ...)
{
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rel(double value, double target)
{
    return std::abs(value - target) / std::abs(target);
}

TimeBinQubit balanced_qubit(double tau_o, double phi = 0.0)
{
    return make_qubit(std::sqrt(0.5), std::sqrt(0.5), phi, tau_o, 1.0, 0.0);
}

TimeBinQubit single_bin_qubit(double tau_o)
{
    return make_qubit(1.0, 0.0, 0.0, tau_o, 1.0, 0.0);
}

ProtocolSchedule schedule_for(double eta, int steps_per_dt = 32, int nz = 0)
{
    ProtocolSchedule s;
    s.eta = eta;
    s.steps_per_dt = steps_per_dt;
    s.nz = nz;
    return s;
}

double closed_form_transverse(double eta, double alpha_o_L)
{
    return epsilon_o(eta) * std::pow(-std::expm1(-0.5 * (1.0 + 1.0 / eta) * alpha_o_L), 2);
}

double gain_t(double eta, double alpha_o_L)
{
    return eta * closed_form_transverse(eta, alpha_o_L);
}

// Relative L² distance between two records on the same grid.
double l2_error(const FieldRecord& a, const FieldRecord& b)
{
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += std::norm(a[i] - b[i]);
        ref += std::norm(b[i]);
    }
    return std::sqrt(diff / ref);
}

// Energy bookkeeping shared by criteria 4, 5 and 9.
struct ConservationLog {
    double worst = 0.0;
    int runs = 0;

    void add(const MetricReport& m)
    {
        worst = std::max(worst, std::abs(m.energy_total - 1.0));
        ++runs;
    }
};

CriterionResult criterion_1()
{
    CriterionResult c{1, "symmetric reversal limit", {}, 0.0};
    const TimeBinQubit q = make_qubit(0.8, 0.6, 0.7, 8.0, 1.0, 0.0);
    const MediumConfig m = make_transverse(10.0, 6.0, 0.0);
    const auto start = std::chrono::steady_clock::now();
    const RunResult r = run_protocol(q, m, schedule_for(1.0));
    const double runtime = seconds_since(start);
    const MetricReport mr = measure(r, q, m);

    const double target = std::pow(-std::expm1(-6.0), 2);
    const double e = rel(mr.efficiency, target);
    c.parts.push_back({"efficiency", e <= 0.02, false,
                       format("eps=%.5f vs %.5f, rel %.2e <= 2e-2", mr.efficiency, target, e)});

    const FieldRecord oracle = echo_envelope_transverse(q, transverse_params(m, 1.0, r.schedule.t1, q.tau_o()),
                                                        r.echo.grid());
    const double l2 = l2_error(r.echo, oracle);
    c.parts.push_back({"envelope", l2 <= 0.02, false, format("L2 error %.2e <= 2e-2", l2)});
    c.parts.push_back({"bit swap", mr.bit_flip_applied && mr.fidelity >= 0.99, false,
                       format("flip=%s F=%.5f", mr.bit_flip_applied ? "yes" : "no", mr.fidelity)});
    c.parts.push_back({"runtime", runtime < 10.0, false, format("%.2f s < 10 s", runtime)});
    return c;
}

CriterionResult criterion_2()
{
    CriterionResult c{2, "mode-matching symmetry and 50% points", {}, 0.0};
    double worst_half = 0.0;
    for (double eta : {3.0 - 2.0 * std::numbers::sqrt2, 3.0 + 2.0 * std::numbers::sqrt2})
        worst_half = std::max(worst_half, std::abs(epsilon_o(eta) - 0.5));
    c.parts.push_back({"50% points", worst_half <= 1e-12, false, format("|eps-0.5| = %.1e <= 1e-12", worst_half)});

    // The two sides are algebraically equal, but 1/η is itself rounded.
    double worst_sym = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double eta = std::pow(10.0, -1.0 + 2.0 * i / 200.0);
        worst_sym = std::max(worst_sym, rel(epsilon_o(1.0 / eta), epsilon_o(eta)));
    }
    c.parts.push_back({"eta <-> 1/eta", worst_sym <= 1e-15, false,
                       format("max rel diff %.1e <= 1e-15 over 201 points in [0.1, 10]", worst_sym)});
    return c;
}

CriterionResult criterion_3()
{
    CriterionResult c{3, "gain thresholds", {}, 0.0};
    double lo = 1.0;
    double hi = 5.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (gain_t(mid, 2.0) > 1.0 ? hi : lo) = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    c.parts.push_back({"G=1 crossing", std::abs(crossing - 1.7) <= 0.05, false,
                       format("eta=%.4f vs 1.7 +- 0.05", crossing)});

    const double g = gain_transverse(transverse_params(make_transverse(10.0, 20.0, 0.0), 100.0, 20.0, 8.0), 1.0, 0.0);
    const double e = rel(g, 4.0);
    c.parts.push_back({"asymptote", e <= 0.01, true,
                       format("G(100, 20)=%.4f vs 4, rel %.2e <= 1e-2; bounded by 4eta^2/(1+eta)^2=%.4f", g, e,
                              4.0 * 1e4 / (101.0 * 101.0))});
    return c;
}

CriterionResult criterion_4(ConservationLog& log)
{
    CriterionResult c{4, "transverse numeric vs closed form", {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    const TimeBinQubit q = balanced_qubit(8.0);
    double worst = 0.0;
    int monotone = 0;
    int points = 0;
    std::string detail;
    for (double eta : {0.5, 1.0, 2.0, 4.0}) {
        for (double depth : {1.0, 2.0, 4.0}) {
            // A broad line keeps the finite-width bias below the grid error.
            const MediumConfig m = make_transverse(100.0, depth, 0.0);
            const double target = closed_form_transverse(eta, depth);
            const MetricReport fine = measure(run_protocol(q, m, schedule_for(eta, 32, 128)), q, m);
            const MetricReport coarse = measure(run_protocol(q, m, schedule_for(eta, 16, 64)), q, m);
            log.add(fine);
            log.add(coarse);
            const double r_fine = rel(fine.efficiency, target);
            const double r_coarse = rel(coarse.efficiency, target);
            worst = std::max(worst, r_fine);
            monotone += r_fine < r_coarse;
            ++points;
            if (r_fine >= r_coarse)
                detail += format(" not reduced at (%g,%g): %.2e -> %.2e;", eta, depth, r_coarse, r_fine);
        }
    }
    const double runtime = seconds_since(start);
    c.parts.push_back({"3% match", worst <= 0.03, false, format("max rel residual %.2e <= 3e-2", worst)});
    c.parts.push_back({"grid halving", monotone == points, false,
                       format("%d/%d residuals reduced from 16/64 to 32/128 steps/cells%s", monotone, points,
                              detail.c_str())});
    c.parts.push_back({"runtime", runtime < 300.0, false, format("%.1f s < 300 s", runtime)});
    return c;
}

CriterionResult criterion_5(ConservationLog& log)
{
    CriterionResult c{5, "longitudinal efficiency", {}, 0.0};
    const TimeBinQubit q = balanced_qubit(8.0);
    double worst = 0.0;
    for (double eta : {0.5, 1.0, 2.0, 4.0}) {
        for (double kappa : {0.5 * kPi, kPi, 4.0 * kPi}) {
            const MediumConfig m = make_longitudinal(10.0, kappa / (2.0 * kPi), 0.0);
            const MetricReport r = measure(run_protocol(q, m, schedule_for(eta)), q, m);
            log.add(r);
            const double ml = M_longitudinal(m.zeta_over_chi, eta);
            worst = std::max(worst, rel(r.efficiency, ml * ml));
        }
    }
    c.parts.push_back({"(M^l)^2 match", worst <= 0.05, false, format("max rel residual %.2e <= 5e-2", worst)});

    const double kappa = 0.1 * kPi;
    const double eta = 2.0;
    const double small = kappa * kappa / eta;
    const MediumConfig ml = make_longitudinal(10.0, kappa / (2.0 * kPi), 0.0);
    const MediumConfig mt = make_transverse(10.0, kappa, 0.0);
    const double el = efficiency_longitudinal(longitudinal_params(ml, eta, 20.0, 8.0), 1.0, 0.0);
    const double et = efficiency_transverse(transverse_params(mt, eta, 20.0, 8.0), 1.0, 0.0);
    const MetricReport sim = measure(run_protocol(q, ml, schedule_for(eta)), q, ml);
    const double worst_small = std::max({rel(el, small), rel(et, small), rel(sim.efficiency, small)});
    c.parts.push_back({"small-depth limit", worst_small <= 0.10, true,
                       format("kappa^2/eta=%.4f vs eps_l=%.4f eps_t=%.4f sim=%.4f, max rel %.2e <= 1e-1", small, el,
                              et, sim.efficiency, worst_small)});
    return c;
}

CriterionResult criterion_6()
{
    CriterionResult c{6, "frequency-shift number", {}, 0.0};
    const double delta_t = 100e-9;
    auto split_kHz = [&](double zeta_over_chi) {
        const LongitudinalParams p = longitudinal_params(make_longitudinal(10.0, zeta_over_chi, 0.0), 3.0, 20.0, 2.0);
        const auto [w0, w1] = freq_shifts(p);
        return std::abs(w0 - w1) / (2.0 * kPi * delta_t) * 1e-3;
    };
    const double split = split_kHz(6.0 / (2.0 * kPi));
    const double e = rel(split, 17.32);
    c.parts.push_back({"|dw0-dw1|", e <= 0.01, true,
                       format("2pi x %.3f kHz vs 2pi x 17.32 kHz, rel %.2e <= 1e-2 (zeta/chi=1 gives %.3f kHz)", split,
                              e, split_kHz(1.0))});
    return c;
}

CriterionResult criterion_7()
{
    CriterionResult c{7, "fidelity after optimal unitary", {}, 0.0};
    const TimeBinQubit q = make_qubit(0.6, 0.8, 0.5, 4.0, 1.0, 0.0);
    double worst = 1.0;
    int runs = 0;
    for (double eta : {0.5, 1.0, 2.0, 4.0})
        for (double depth : {1.0, 2.0, 4.0})
            for (double dk : {0.0, 0.5 * kPi})
                for (double gamma : {0.0, 0.02}) {
                    const MediumConfig m = make_transverse(10.0, depth, gamma, dk);
                    worst = std::min(worst, measure(run_protocol(q, m, schedule_for(eta)), q, m).fidelity);
                    ++runs;
                }
    c.parts.push_back({"transverse", worst >= 0.99, false, format("min F=%.5f over %d runs >= 0.99", worst, runs)});

    const MediumConfig ml = make_longitudinal(10.0, 6.0 / (2.0 * kPi), 0.0);
    const MetricReport r = measure(run_protocol(q, ml, schedule_for(3.0)), q, ml);
    c.parts.push_back({"longitudinal", r.fidelity >= 0.99, false,
                       format("F=%.5f >= 0.99 at eta=3, kappa=6, tau_o=4", r.fidelity)});
    return c;
}

CriterionResult criterion_8()
{
    CriterionResult c{8, "echo timing", {}, 0.0};
    const TimeBinQubit q = single_bin_qubit(8.0);
    // The gradient echo carries τ_m/η − τ_m/η² even at δk = 0, so each medium
    // is held to its own predicted arrival; the offset from (1+1/η)t1 alone is
    // reported. The transverse line is broad to suppress the group delay.
    double worst_steps = 0.0;
    double worst_plain_l = 0.0;
    for (double eta : {0.5, 1.0, 2.0, 3.0}) {
        for (const MediumConfig& m : {make_transverse(100.0, 6.0, 0.0), make_longitudinal(10.0, 2.0, 0.0)}) {
            const ProtocolSchedule s = schedule_for(eta);
            const RunResult r = run_protocol(q, m, s);
            worst_steps = std::max(worst_steps, std::abs(r.echo_peak_time - echo_time(m, eta, s.t1)) / s.step());
            if (m.kind == BroadeningKind::longitudinal)
                worst_plain_l =
                    std::max(worst_plain_l, std::abs(r.echo_peak_time - (1.0 + 1.0 / eta) * s.t1) / s.step());
        }
    }
    c.parts.push_back({"t_echo", worst_steps <= 1.0, false,
                       format("max offset %.2f steps <= 1 over 8 runs (longitudinal vs (1+1/eta)t1 alone: %.1f steps)",
                              worst_steps, worst_plain_l)});

    // δk/χ' = 2δt with χ' = ηχ.
    const double eta = 2.0;
    const MediumConfig m = make_longitudinal(10.0, 2.0, 0.0, 2.0 * eta * 10.0);
    const ProtocolSchedule s = schedule_for(eta);
    const RunResult r = run_protocol(q, m, s);
    const double predicted = (1.0 + 1.0 / eta) * s.t1 + tau_z(longitudinal_params(m, eta, s.t1, q.tau_o()));
    const double off = std::abs(r.echo_peak_time - predicted) / s.step();
    c.parts.push_back({"tau_z shift", off <= 2.0, false,
                       format("centroid %.4f vs %.4f, %.2f steps <= 2", r.echo_peak_time, predicted, off)});
    return c;
}

CriterionResult criterion_9(const ConservationLog& log)
{
    CriterionResult c{9, "energy conservation", {}, 0.0};
    c.parts.push_back({"sum", log.runs > 0 && log.worst <= 1e-2, false,
                       format("max |T+E+R+L-1| = %.2e <= 1e-2 over %d runs", log.worst, log.runs)});
    return c;
}

CriterionResult criterion_10(const AcceptanceOptions& options)
{
    CriterionResult c{10, "phase surfaces", {}, 0.0};
    RunConfig base;
    base.medium = make_longitudinal(10.0, 3.0, 0.0);
    base.qubit.alpha = base.qubit.beta = std::sqrt(0.5);
    base.sweep.metrics = {"phase_diff_01"};
    base.sweep.axis1 = SweepAxis{"tau_o", 4.0, 14.0, 6, AxisScale::linear};
    base.sweep.axis2 = SweepAxis{"eta", 0.25, 4.0, 9, AxisScale::log};

    auto surface = [&](double t1) {
        RunConfig cfg = base;
        cfg.schedule.t1 = t1;
        SweepTable t = run_sweep(cfg, SweepMode::fast).tables.front();
        if (!options.out_dir.empty()) {
            std::filesystem::create_directories(options.out_dir);
            std::ofstream f(options.out_dir + format("/phase_diff_01_t1_%g.csv", t1));
            write_csv(f, t, SweepMode::fast);
        }
        return t;
    };
    const SweepTable near = surface(20.0);
    const SweepTable far = surface(40.0);

    int compress = 0;
    int decompress = 0;
    int finite = 0;
    int attenuated = 0;
    int compared = 0;
    for (std::size_t i = 0; i < near.rows.size(); ++i) {
        const double eta = near.rows[i][1];
        const double a = near.rows[i][2];
        const double b = far.rows[i][2];
        finite += std::isfinite(a) && std::isfinite(b);
        compress += eta > 1.0 && std::isfinite(a) && a != 0.0;
        decompress += eta < 1.0 && std::isfinite(a) && a != 0.0;
        if (std::abs(eta - 1.0) > 1e-9) {
            ++compared;
            attenuated += std::abs(b) < std::abs(a);
        }
    }
    c.parts.push_back({"emitted", finite == static_cast<int>(near.rows.size()) && compress > 0 && decompress > 0, false,
                       format("%zu rows per surface, %d with eta>1, %d with eta<1", near.rows.size(), compress,
                              decompress)});

    double worst = 0.0;
    for (double tau_o : {4.0, 6.0, 8.0, 10.0, 12.0, 14.0})
        for (double eta : {1.0 - 1e-4, 1.0 + 1e-4})
            worst = std::max(worst, std::abs(phase_diff_01(longitudinal_params(base.medium, eta, 20.0, tau_o))));
    c.parts.push_back({"continuity at eta=1", worst < 1e-3, false, format("max |dphi01| = %.2e < 1e-3", worst)});
    c.parts.push_back({"t1 attenuation", attenuated == compared, false,
                       format("|dphi01(t1=40)| < |dphi01(t1=20)| at %d/%d points", attenuated, compared)});
    return c;
}

}  // namespace

bool CriterionResult::pass() const noexcept
{
    return std::all_of(parts.begin(), parts.end(), [](const CheckPart& p) { return p.pass; });
}

bool CriterionResult::expected_failure() const noexcept
{
    return !pass() &&
           std::all_of(parts.begin(), parts.end(), [](const CheckPart& p) { return p.pass || p.known_unattainable; });
}

std::string CriterionResult::line() const
{
    std::string s = format("%s [%d] %s (%.1f s)", pass() ? "PASS" : "FAIL", number, title.c_str(), seconds);
    for (const CheckPart& p : parts) {
        s += " | " + p.name + ": " + p.detail + (p.pass ? " ok" : " FAILED");
        if (!p.pass && p.known_unattainable)
            s += " (unattainable as stated)";
    }
    return s;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result)
{
    auto wanted = [&](int n) {
        return options.only.empty() || std::find(options.only.begin(), options.only.end(), n) != options.only.end();
    };
    std::vector<CriterionResult> results;
    auto record = [&](int n, auto&& check) {
        if (!wanted(n))
            return;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r = check();
        r.seconds = seconds_since(start);
        results.push_back(r);
        if (on_result)
            on_result(r);
    };

    ConservationLog log;
    record(1, [] { return criterion_1(); });
    record(2, [] { return criterion_2(); });
    record(3, [] { return criterion_3(); });
    record(4, [&] { return criterion_4(log); });
    record(5, [&] { return criterion_5(log); });
    record(6, [] { return criterion_6(); });
    record(7, [] { return criterion_7(); });
    record(8, [] { return criterion_8(); });
    // Criterion 9 audits the runs of 4 and 5; run them if they were skipped.
    if (wanted(9) && log.runs == 0) {
        (void)criterion_4(log);
        (void)criterion_5(log);
    }
    record(9, [&] { return criterion_9(log); });
    record(10, [&] { return criterion_10(options); });
    return results;
}

}  // namespace cribq
