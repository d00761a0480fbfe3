#pragma once

#include <optional>
#include <string>

#include "bwsim/metrics.hpp"
#include "bwsim/scenario.hpp"

namespace bwsim {

struct RunResult {
    Scenario scenario;
    MetricsLog log;  // finalized; normalized metrics filled in when requested
};

// Execute a scenario. When the scenario requests normalization, solo
// baseline runs are executed per distinct task signature and cached (in
// memory and, when cache_dir is non-empty, on disk keyed by content hash).
RunResult run_scenario(const Scenario& s, const std::string& cache_dir = "");

// Execute and write trace.csv / frames.csv / summary.csv / scenario.json /
// manifest.json into out_dir (created if missing).
RunResult run_scenario_to_dir(const Scenario& s, const std::string& out_dir);

void write_run_outputs(const RunResult& r, const std::string& out_dir);

}  // namespace bwsim
