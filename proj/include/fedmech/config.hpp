#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedmech/scenario.hpp"

namespace fedmech {

// Batch description: which scenarios to run, with which mechanisms and seeds.
struct RunManifest {
    std::vector<std::string> scenario_files;
    std::string out_dir = "results";
    int repetitions = 1;
    std::vector<std::uint64_t> seeds;        // empty: use each scenario's own seed
    std::vector<std::string> mechanisms;     // subset of {realfm, linear, local}
    int jobs = 1;
};

// Plain key-value scenario file, one `[section]` per scenario. Parse errors
// name the offending key and line.
std::vector<ScenarioSpec> parse_scenarios(const std::string& path);
std::vector<ScenarioSpec> parse_scenarios_text(const std::string& text, const std::string& origin);

RunManifest parse_manifest(const std::string& path);
RunManifest parse_manifest_text(const std::string& text, const std::string& origin);

}  // namespace fedmech
