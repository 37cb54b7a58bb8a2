#pragma once

#include "cribq/dynamics.hpp"
#include "cribq/medium.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cribq {

enum class AxisScale { linear, log };

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    AxisScale scale = AxisScale::linear;

    /// Axis values; a single-point axis yields `min`.
    std::vector<double> values() const;

    bool operator==(const SweepAxis&) const = default;
};

/// Parameter names a sweep axis may vary.
const std::vector<std::string>& sweep_parameters();
/// Metric names a sweep may emit.
const std::vector<std::string>& sweep_metrics();

struct QubitBlock {
    double alpha = 1.0;
    double beta = 0.0;
    double phi = 0.0;
    double tau_o = 8.0;
    double omega_eg_tau_o = 0.0;
    double carrier_detuning = 0.0;

    bool operator==(const QubitBlock&) const = default;
};

struct SweepBlock {
    std::vector<std::string> metrics;
    std::optional<SweepAxis> axis1;
    std::optional<SweepAxis> axis2;
    /// Relative numeric–analytic residual tolerated under --strict.
    double tolerance = 0.05;

    bool operator==(const SweepBlock&) const = default;
};

struct OutputBlock {
    std::string path = "out";
    std::string format = "csv";

    bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
    QubitBlock qubit;
    MediumConfig medium;
    ProtocolSchedule schedule;
    SweepBlock sweep;
    OutputBlock output;

    TimeBinQubit make_qubit() const;

    bool operator==(const RunConfig&) const = default;
};

/// Parses sectioned `key = value [unit]` text. Units are `dt` for times,
/// `1/dt` for rates and `rad` for angles; they may be omitted. Throws
/// ConfigError carrying the offending line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize(c)) reproduces c exactly.
std::string serialize(const RunConfig& config);

/// Copy of `config` with sweep parameter `name` set to `value`. Throws
/// ConfigError for an unknown name.
RunConfig with_parameter(const RunConfig& config, const std::string& name, double value);

}  // namespace cribq
