#include "cribq/config.hpp"

#include "cribq/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace cribq {

std::vector<double> SweepAxis::values() const
{
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        v[static_cast<std::size_t>(i)] = scale == AxisScale::linear
                                             ? min + f * (max - min)
                                             : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    }
    if (count > 1)
        v.back() = max;
    return v;
}

const std::vector<std::string>& sweep_parameters()
{
    static const std::vector<std::string> names{"eta",      "t1",        "tau_o",      "phi",
                                                "alpha_o_L", "zeta_over_chi", "kappa_eff", "gamma_eg",
                                                "delta_k_L", "Delta_inh"};
    return names;
}

const std::vector<std::string>& sweep_metrics()
{
    static const std::vector<std::string> names{"efficiency",   "gain",   "phase_diff_01", "efficiency_t",
                                                "efficiency_l", "gain_t", "gain_l",        "fidelity"};
    return names;
}

TimeBinQubit RunConfig::make_qubit() const
{
    return cribq::make_qubit(qubit.alpha, qubit.beta, qubit.phi, qubit.tau_o, 1.0, qubit.omega_eg_tau_o,
                             qubit.carrier_detuning);
}

namespace {

enum class Unit { none, time, rate, angle };

const char* unit_suffix(Unit u)
{
    switch (u) {
    case Unit::time: return "dt";
    case Unit::rate: return "1/dt";
    case Unit::angle: return "rad";
    case Unit::none: break;
    }
    return "";
}

struct KeySpec {
    Unit unit;
};

const std::map<std::string, std::map<std::string, KeySpec>>& schema()
{
    static const std::map<std::string, std::map<std::string, KeySpec>> s{
        {"qubit",
         {{"alpha", {Unit::none}},
          {"beta", {Unit::none}},
          {"phi", {Unit::angle}},
          {"tau_o", {Unit::time}},
          {"omega_eg_tau_o", {Unit::angle}},
          {"carrier_detuning", {Unit::rate}}}},
        {"medium",
         {{"kind", {Unit::none}},
          {"Delta_inh", {Unit::rate}},
          {"alpha_o_L", {Unit::none}},
          {"zeta_over_chi", {Unit::none}},
          {"gamma_eg", {Unit::rate}},
          {"delta_k_L", {Unit::angle}}}},
        {"schedule",
         {{"t1", {Unit::time}},
          {"eta", {Unit::none}},
          {"t_max", {Unit::time}},
          {"steps_per_dt", {Unit::none}},
          {"nz", {Unit::none}},
          {"detuning_nodes", {Unit::none}},
          {"span_factor", {Unit::none}}}},
        {"sweep", {{"metrics", {Unit::none}}, {"axis1", {Unit::none}}, {"axis2", {Unit::none}}, {"tolerance", {Unit::none}}}},
        {"output", {{"path", {Unit::none}}, {"format", {Unit::none}}}},
    };
    return s;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;)
        out.push_back(t);
    return out;
}

// A number, optionally written as a multiple of pi ("6pi", "0.5pi", "pi").
double parse_number(const std::string& token, int line)
{
    std::string body = token;
    double factor = 1.0;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        body.resize(body.size() - 2);
        factor = std::numbers::pi;
        if (body.empty() || body == "+")
            return factor;
        if (body == "-")
            return -factor;
    }
    double v = 0.0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    if (!body.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError("'" + token + "' is not a number", line);
    return v * factor;
}

int parse_int(const std::string& token, int line)
{
    const double v = parse_number(token, line);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("'" + token + "' is not an integer", line);
    return static_cast<int>(v);
}

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

double numeric(const Section& sec, const std::string& section, const std::string& key, double fallback)
{
    const auto it = sec.find(key);
    if (it == sec.end())
        return fallback;
    const Unit unit = schema().at(section).at(key).unit;
    const auto tokens = split_ws(it->second.value);
    if (tokens.empty() || tokens.size() > 2)
        throw ConfigError(key + " expects a number with an optional unit", it->second.line);
    if (tokens.size() == 2) {
        if (unit == Unit::none)
            throw ConfigError(key + " is dimensionless but has unit '" + tokens[1] + "'", it->second.line);
        if (tokens[1] != unit_suffix(unit))
            throw ConfigError(key + " takes unit '" + unit_suffix(unit) + "', got '" + tokens[1] + "'",
                              it->second.line);
    }
    return parse_number(tokens[0], it->second.line);
}

int integer(const Section& sec, const std::string& key, int fallback)
{
    const auto it = sec.find(key);
    if (it == sec.end())
        return fallback;
    const auto tokens = split_ws(it->second.value);
    if (tokens.size() != 1)
        throw ConfigError(key + " expects one integer", it->second.line);
    return parse_int(tokens[0], it->second.line);
}

int line_of(const Section& sec, const std::string& key, int fallback)
{
    const auto it = sec.find(key);
    return it == sec.end() ? fallback : it->second.line;
}

SweepAxis parse_axis(const Entry& e, const std::string& key)
{
    const auto t = split_ws(e.value);
    if (t.size() != 5)
        throw ConfigError(key + " expects: <parameter> <min> <max> <count> linear|log", e.line);
    SweepAxis a;
    a.name = t[0];
    const auto& names = sweep_parameters();
    if (std::find(names.begin(), names.end(), a.name) == names.end())
        throw ConfigError(key + ": unknown sweep parameter '" + a.name + "'", e.line);
    a.min = parse_number(t[1], e.line);
    a.max = parse_number(t[2], e.line);
    a.count = parse_int(t[3], e.line);
    if (a.count < 1)
        throw ConfigError(key + ": count must be at least 1", e.line);
    if (t[4] == "linear")
        a.scale = AxisScale::linear;
    else if (t[4] == "log")
        a.scale = AxisScale::log;
    else
        throw ConfigError(key + ": scale must be linear or log, got '" + t[4] + "'", e.line);
    if (a.scale == AxisScale::log && !(a.min > 0.0 && a.max > 0.0))
        throw ConfigError(key + ": a log axis needs positive bounds", e.line);
    return a;
}

void check_axis_kind(const SweepAxis& a, BroadeningKind kind, int line)
{
    if (kind == BroadeningKind::transverse && a.name == "zeta_over_chi")
        throw ConfigError("zeta_over_chi is a longitudinal parameter; use kappa_eff to share an axis", line);
    if (kind == BroadeningKind::longitudinal && a.name == "alpha_o_L")
        throw ConfigError("alpha_o_L is a transverse parameter; use kappa_eff to share an axis", line);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text)
{
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;
    std::string current;
    std::istringstream in(text);
    int line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header", line_no);
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!schema().contains(current))
                throw ConfigError("unknown section [" + current + "]", line_no);
            if (section_lines.contains(current))
                throw ConfigError("section [" + current + "] appears twice", line_no);
            section_lines[current] = line_no;
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        if (current.empty())
            throw ConfigError("key outside of any section", line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!schema().at(current).contains(key))
            throw ConfigError("unknown key '" + key + "' in [" + current + "]", line_no);
        if (value.empty())
            throw ConfigError("missing value for '" + key + "'", line_no);
        auto& sec = sections[current];
        if (sec.contains(key))
            throw ConfigError("duplicate key '" + key + "'", line_no);
        sec[key] = {value, line_no};
    }

    RunConfig c;
    const Section& q = sections["qubit"];
    c.qubit.alpha = numeric(q, "qubit", "alpha", c.qubit.alpha);
    c.qubit.beta = numeric(q, "qubit", "beta", c.qubit.beta);
    c.qubit.phi = numeric(q, "qubit", "phi", c.qubit.phi);
    c.qubit.tau_o = numeric(q, "qubit", "tau_o", c.qubit.tau_o);
    c.qubit.omega_eg_tau_o = numeric(q, "qubit", "omega_eg_tau_o", c.qubit.omega_eg_tau_o);
    c.qubit.carrier_detuning = numeric(q, "qubit", "carrier_detuning", c.qubit.carrier_detuning);
    try {
        (void)c.make_qubit();
    } catch (const Error& e) {
        throw ConfigError(e.what(), line_of(q, "alpha", section_lines["qubit"]));
    }

    const Section& m = sections["medium"];
    if (const auto it = m.find("kind"); it != m.end()) {
        if (it->second.value == "transverse")
            c.medium.kind = BroadeningKind::transverse;
        else if (it->second.value == "longitudinal")
            c.medium.kind = BroadeningKind::longitudinal;
        else
            throw ConfigError("kind must be transverse or longitudinal, got '" + it->second.value + "'",
                              it->second.line);
    }
    const bool transverse = c.medium.kind == BroadeningKind::transverse;
    if (transverse && m.contains("zeta_over_chi"))
        throw ConfigError("zeta_over_chi is not a transverse parameter", line_of(m, "zeta_over_chi", 0));
    if (!transverse && m.contains("alpha_o_L"))
        throw ConfigError("alpha_o_L is not a longitudinal parameter", line_of(m, "alpha_o_L", 0));
    c.medium.Delta_inh = numeric(m, "medium", "Delta_inh", c.medium.Delta_inh);
    c.medium.alpha_o_L = numeric(m, "medium", "alpha_o_L", 0.0);
    c.medium.zeta_over_chi = numeric(m, "medium", "zeta_over_chi", 0.0);
    c.medium.gamma_eg = numeric(m, "medium", "gamma_eg", 0.0);
    c.medium.delta_k_L = numeric(m, "medium", "delta_k_L", 0.0);
    try {
        validate(c.medium);
    } catch (const Error& e) {
        throw ConfigError(e.what(), section_lines.contains("medium") ? section_lines["medium"] : 0);
    }

    const Section& s = sections["schedule"];
    c.schedule.t1 = numeric(s, "schedule", "t1", c.schedule.t1);
    c.schedule.eta = numeric(s, "schedule", "eta", c.schedule.eta);
    c.schedule.t_max = numeric(s, "schedule", "t_max", c.schedule.t_max);
    c.schedule.steps_per_dt = integer(s, "steps_per_dt", c.schedule.steps_per_dt);
    c.schedule.nz = integer(s, "nz", c.schedule.nz);
    c.schedule.detuning_nodes = integer(s, "detuning_nodes", c.schedule.detuning_nodes);
    c.schedule.span_factor = numeric(s, "schedule", "span_factor", c.schedule.span_factor);
    if (!(c.schedule.eta > 0.0))
        throw ConfigError("eta must be positive", line_of(s, "eta", 0));
    if (c.schedule.steps_per_dt < 1)
        throw ConfigError("steps_per_dt must be positive", line_of(s, "steps_per_dt", 0));
    if (c.schedule.nz < 0 || c.schedule.detuning_nodes < 0)
        throw ConfigError("grid sizes must be >= 0 (0 selects the default)", section_lines["schedule"]);
    if (c.schedule.t_max < 0.0)
        throw ConfigError("t_max must be >= 0 (0 selects the default)", line_of(s, "t_max", 0));

    const Section& w = sections["sweep"];
    if (const auto it = w.find("metrics"); it != w.end()) {
        std::string list = it->second.value;
        std::replace(list.begin(), list.end(), ',', ' ');
        for (const auto& name : split_ws(list)) {
            const auto& known = sweep_metrics();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw ConfigError("unknown sweep metric '" + name + "'", it->second.line);
            if (std::find(c.sweep.metrics.begin(), c.sweep.metrics.end(), name) != c.sweep.metrics.end())
                throw ConfigError("sweep metric '" + name + "' listed twice", it->second.line);
            c.sweep.metrics.push_back(name);
        }
    }
    if (const auto it = w.find("axis1"); it != w.end()) {
        c.sweep.axis1 = parse_axis(it->second, "axis1");
        check_axis_kind(*c.sweep.axis1, c.medium.kind, it->second.line);
    }
    if (const auto it = w.find("axis2"); it != w.end()) {
        if (!c.sweep.axis1)
            throw ConfigError("axis2 requires axis1", it->second.line);
        c.sweep.axis2 = parse_axis(it->second, "axis2");
        check_axis_kind(*c.sweep.axis2, c.medium.kind, it->second.line);
        if (c.sweep.axis2->name == c.sweep.axis1->name)
            throw ConfigError("axis2 repeats the axis1 parameter", it->second.line);
    }
    c.sweep.tolerance = numeric(w, "sweep", "tolerance", c.sweep.tolerance);
    if (!(c.sweep.tolerance > 0.0))
        throw ConfigError("tolerance must be positive", line_of(w, "tolerance", 0));

    const Section& o = sections["output"];
    if (const auto it = o.find("path"); it != o.end())
        c.output.path = it->second.value;
    if (const auto it = o.find("format"); it != o.end()) {
        if (it->second.value != "csv")
            throw ConfigError("only the csv output format is supported", it->second.line);
        c.output.format = it->second.value;
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& c)
{
    std::ostringstream os;
    auto kv = [&](const char* key, double v, Unit u) {
        os << key << " = " << fmt(v);
        if (u != Unit::none)
            os << ' ' << unit_suffix(u);
        os << '\n';
    };
    auto axis = [&](const char* key, const SweepAxis& a) {
        os << key << " = " << a.name << ' ' << fmt(a.min) << ' ' << fmt(a.max) << ' ' << a.count << ' '
           << (a.scale == AxisScale::linear ? "linear" : "log") << '\n';
    };

    os << "[qubit]\n";
    kv("alpha", c.qubit.alpha, Unit::none);
    kv("beta", c.qubit.beta, Unit::none);
    kv("phi", c.qubit.phi, Unit::angle);
    kv("tau_o", c.qubit.tau_o, Unit::time);
    kv("omega_eg_tau_o", c.qubit.omega_eg_tau_o, Unit::angle);
    kv("carrier_detuning", c.qubit.carrier_detuning, Unit::rate);

    os << "\n[medium]\nkind = " << to_string(c.medium.kind) << '\n';
    kv("Delta_inh", c.medium.Delta_inh, Unit::rate);
    if (c.medium.kind == BroadeningKind::transverse)
        kv("alpha_o_L", c.medium.alpha_o_L, Unit::none);
    else
        kv("zeta_over_chi", c.medium.zeta_over_chi, Unit::none);
    kv("gamma_eg", c.medium.gamma_eg, Unit::rate);
    kv("delta_k_L", c.medium.delta_k_L, Unit::angle);

    os << "\n[schedule]\n";
    kv("t1", c.schedule.t1, Unit::time);
    kv("eta", c.schedule.eta, Unit::none);
    kv("t_max", c.schedule.t_max, Unit::time);
    os << "steps_per_dt = " << c.schedule.steps_per_dt << '\n';
    os << "nz = " << c.schedule.nz << '\n';
    os << "detuning_nodes = " << c.schedule.detuning_nodes << '\n';
    kv("span_factor", c.schedule.span_factor, Unit::none);

    os << "\n[sweep]\n";
    if (!c.sweep.metrics.empty()) {
        os << "metrics =";
        for (std::size_t i = 0; i < c.sweep.metrics.size(); ++i)
            os << (i ? ", " : " ") << c.sweep.metrics[i];
        os << '\n';
    }
    if (c.sweep.axis1)
        axis("axis1", *c.sweep.axis1);
    if (c.sweep.axis2)
        axis("axis2", *c.sweep.axis2);
    kv("tolerance", c.sweep.tolerance, Unit::none);

    os << "\n[output]\npath = " << c.output.path << "\nformat = " << c.output.format << '\n';
    return os.str();
}

RunConfig with_parameter(const RunConfig& config, const std::string& name, double value)
{
    RunConfig c = config;
    if (name == "eta")
        c.schedule.eta = value;
    else if (name == "t1")
        c.schedule.t1 = value;
    else if (name == "tau_o")
        c.qubit.tau_o = value;
    else if (name == "phi")
        c.qubit.phi = value;
    else if (name == "alpha_o_L")
        c.medium.alpha_o_L = value;
    else if (name == "zeta_over_chi")
        c.medium.zeta_over_chi = value;
    else if (name == "kappa_eff") {
        if (c.medium.kind == BroadeningKind::transverse)
            c.medium.alpha_o_L = value;
        else
            c.medium.zeta_over_chi = value / (2.0 * std::numbers::pi);
    } else if (name == "gamma_eg")
        c.medium.gamma_eg = value;
    else if (name == "delta_k_L")
        c.medium.delta_k_L = value;
    else if (name == "Delta_inh")
        c.medium.Delta_inh = value;
    else
        throw ConfigError("unknown sweep parameter '" + name + "'");
    return c;
}

}  // namespace cribq
