// scenarios.hpp - scenario registry, run orchestration and summaries
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qedtd/analysis.hpp"
#include "qedtd/config.hpp"
#include "qedtd/modal.hpp"
#include "qedtd/simulation.hpp"

namespace qedtd {

struct ScenarioInfo {
    std::string id;
    std::string description;
    std::map<std::string, std::string> preset; // complete raw key-value set
};

const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo* find_scenario(const std::string& id);
// Closest registered id by edit distance, for error messages.
std::string nearest_scenario(const std::string& id);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunSummary {
    ScenarioConfig config;
    Grid grid;
    std::vector<std::pair<std::string, std::string>> items; // ordered key = value
    std::vector<CheckResult> checks;
    bool all_passed = true;
    double wall_time_s = 0.0;
    std::string trace_path;
    std::string oracle_path;
    std::string summary_path;
    PopulationTrace trace;
    PopulationTrace oracle_trace;
};

// Builds the grid, runs the coupled simulation for the configured
// duration, writes the trace CSV (always, even when checks fail), runs the
// modal reference for closed cavities, evaluates the scenario's checks and
// writes the summary file.
RunSummary run_scenario(const ScenarioConfig& cfg);

void write_summary_file(const std::string& path, const RunSummary& summary);

// Counts population revivals: full threshold-sized falls followed by
// rises of |P|^2 (hysteresis scan), i.e. the visible oscillation swings.
int count_population_revivals(const PopulationTrace& trace, double threshold);

} // namespace qedtd
