#pragma once

#include "cribq/feasibility.hpp"
#include "cribq/sweep.hpp"

#include <string>
#include <vector>

namespace cribq::tool {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResolution = 3;
inline constexpr int kExitAcceptance = 4;

/// Writes input, transmitted, echo and oracle CSVs plus metrics.json.
int simulate(const std::string& config_path, const std::string& out_dir);

int sweep(const std::string& config_path, SweepMode mode, bool strict, const std::string& out_dir, int threads);

int feasibility(const FeasibilityInput& input, bool json);

int selftest(const std::string& out_dir, const std::vector<int>& only);

}  // namespace cribq::tool
