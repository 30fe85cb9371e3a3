#pragma once

#include <string>

#include "fedmech/config.hpp"

namespace fedmech {

inline constexpr const char* kToolVersion = "0.1.0";

// Executes every (scenario x mechanism x seed x repetition) run, writing
// results.csv, summary.csv, and meta.txt into the manifest's output
// directory. Scenario paths are resolved relative to base_dir. Returns 0 on
// full success, nonzero when any run recorded an error.
int run_batch(const RunManifest& manifest, const std::string& base_dir = ".");

// Validates scenarios (Assumptions 1-3 sampling checks) and prints per-device
// local optima without solving equilibria.
int check_batch(const RunManifest& manifest, const std::string& base_dir = ".");

}  // namespace fedmech
