#include "cribq/sweep.hpp"

#include "cribq/analytic.hpp"
#include "cribq/dynamics.hpp"
#include "cribq/errors.hpp"
#include "cribq/metrics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <thread>

namespace cribq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MediumConfig as_kind(const MediumConfig& m, BroadeningKind kind)
{
    const double kappa = effective_depth(m);
    return kind == BroadeningKind::transverse
               ? make_transverse(m.Delta_inh, kappa, m.gamma_eg, m.delta_k_L)
               : make_longitudinal(m.Delta_inh, kappa / (2.0 * std::numbers::pi), m.gamma_eg, m.delta_k_L);
}

double efficiency_of(const RunConfig& c, const MediumConfig& m)
{
    const double eta = c.schedule.eta;
    if (m.kind == BroadeningKind::transverse)
        return efficiency_transverse(transverse_params(m, eta, c.schedule.t1, c.qubit.tau_o), c.qubit.alpha,
                                     c.qubit.beta);
    return efficiency_longitudinal(longitudinal_params(m, eta, c.schedule.t1, c.qubit.tau_o), c.qubit.alpha,
                                   c.qubit.beta);
}

bool absolute_residual(const std::string& metric)
{
    return metric == "phase_diff_01" || metric == "fidelity";
}

// Simulated runs of one grid point, at most one per broadening kind.
class PointRuns {
public:
    explicit PointRuns(const RunConfig& c) : config_(c), qubit_(c.make_qubit()) {}

    const MetricReport& report(BroadeningKind kind)
    {
        auto& slot = kind == BroadeningKind::transverse ? transverse_ : longitudinal_;
        if (!slot) {
            const MediumConfig m = kind == config_.medium.kind ? config_.medium : as_kind(config_.medium, kind);
            slot = measure(run_protocol(qubit_, m, config_.schedule), qubit_, m);
        }
        return *slot;
    }

    double numeric(const std::string& metric)
    {
        const BroadeningKind own = config_.medium.kind;
        if (metric == "efficiency")
            return report(own).efficiency;
        if (metric == "gain")
            return report(own).gain;
        if (metric == "fidelity")
            return report(own).fidelity;
        if (metric == "efficiency_t")
            return report(BroadeningKind::transverse).efficiency;
        if (metric == "efficiency_l")
            return report(BroadeningKind::longitudinal).efficiency;
        if (metric == "gain_t")
            return report(BroadeningKind::transverse).gain;
        if (metric == "gain_l")
            return report(BroadeningKind::longitudinal).gain;
        // phase_diff_01: relative phase of the recalled bins, with the input
        // phase φ removed. Undefined unless both bins are populated.
        if (qubit_.alpha() == 0.0 || qubit_.beta() == 0.0)
            return kNaN;
        const MetricReport& r = report(own);
        return wrap_phase(r.late.phase - r.early.phase + qubit_.phi());
    }

private:
    const RunConfig& config_;
    TimeBinQubit qubit_;
    std::optional<MetricReport> transverse_;
    std::optional<MetricReport> longitudinal_;
};

struct PointResult {
    std::vector<double> axes;
    std::vector<double> value;
    std::vector<double> numeric;
};

}  // namespace

double analytic_metric(const RunConfig& c, const std::string& metric)
{
    const double eta = c.schedule.eta;
    if (metric == "efficiency")
        return efficiency_of(c, c.medium);
    if (metric == "gain")
        return eta * efficiency_of(c, c.medium);
    if (metric == "efficiency_t")
        return efficiency_of(c, as_kind(c.medium, BroadeningKind::transverse));
    if (metric == "efficiency_l")
        return efficiency_of(c, as_kind(c.medium, BroadeningKind::longitudinal));
    if (metric == "gain_t")
        return eta * efficiency_of(c, as_kind(c.medium, BroadeningKind::transverse));
    if (metric == "gain_l")
        return eta * efficiency_of(c, as_kind(c.medium, BroadeningKind::longitudinal));
    if (metric == "fidelity")
        return c.medium.kind == BroadeningKind::transverse ? 1.0 : kNaN;
    if (metric == "phase_diff_01") {
        if (c.medium.kind == BroadeningKind::transverse)
            return 0.0;
        try {
            return phase_diff_01(longitudinal_params(c.medium, eta, c.schedule.t1, c.qubit.tau_o));
        } catch (const DomainError&) {
            return kNaN;
        }
    }
    throw ConfigError("unknown sweep metric '" + metric + "'");
}

SweepOutcome run_sweep(const RunConfig& config, SweepMode mode, int threads)
{
    std::vector<std::string> metrics = config.sweep.metrics;
    if (metrics.empty())
        metrics = {"efficiency"};

    std::vector<std::vector<double>> points;
    const std::vector<double> v1 = config.sweep.axis1 ? config.sweep.axis1->values() : std::vector<double>{};
    const std::vector<double> v2 = config.sweep.axis2 ? config.sweep.axis2->values() : std::vector<double>{};
    if (v1.empty())
        points.push_back({});
    for (double a : v1) {
        if (v2.empty())
            points.push_back({a});
        for (double b : v2)
            points.push_back({a, b});
    }

    std::vector<PointResult> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                RunConfig c = config;
                if (config.sweep.axis1)
                    c = with_parameter(c, config.sweep.axis1->name, points[i][0]);
                if (config.sweep.axis2)
                    c = with_parameter(c, config.sweep.axis2->name, points[i][1]);
                validate(c.medium);
                (void)c.make_qubit();

                PointResult& r = results[i];
                r.axes = points[i];
                for (const auto& m : metrics)
                    r.value.push_back(analytic_metric(c, m));
                if (mode == SweepMode::verify) {
                    PointRuns runs(c);
                    for (const auto& m : metrics)
                        r.numeric.push_back(runs.numeric(m));
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), points.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    SweepOutcome out;
    for (std::size_t k = 0; k < metrics.size(); ++k) {
        SweepTable t;
        t.metric = metrics[k];
        if (config.sweep.axis1)
            t.columns.push_back(config.sweep.axis1->name);
        if (config.sweep.axis2)
            t.columns.push_back(config.sweep.axis2->name);
        t.columns.push_back("value");
        if (mode == SweepMode::verify) {
            t.columns.push_back("numeric");
            t.columns.push_back("residual");
        }
        for (const auto& r : results) {
            std::vector<double> row = r.axes;
            row.push_back(r.value[k]);
            if (mode == SweepMode::verify) {
                const double a = r.value[k];
                const double n = r.numeric[k];
                double res = std::abs(n - a);
                if (t.metric == "phase_diff_01")
                    res = std::abs(wrap_phase(n - a));
                else if (!absolute_residual(t.metric))
                    res /= std::abs(a);
                row.push_back(n);
                row.push_back(res);
                if (std::isfinite(res)) {
                    out.max_residual = std::max(out.max_residual, res);
                    if (res > config.sweep.tolerance)
                        out.within_tolerance = false;
                }
            }
            t.rows.push_back(std::move(row));
        }
        out.tables.push_back(std::move(t));
    }
    return out;
}

void write_csv(std::ostream& out, const SweepTable& t, SweepMode mode)
{
    out << "# metric=" << t.metric << " mode=" << (mode == SweepMode::fast ? "fast" : "verify") << " columns=";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << '\n';
    char buf[32];
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace cribq
