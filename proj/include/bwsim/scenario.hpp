#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bwsim/engine.hpp"
#include "bwsim/types.hpp"

namespace bwsim {

struct TaskSpec {
    std::string generator;  // frame | stream | latency | compute
    std::string name;
    int core = 0;
    SimTime arrival_ns = 0;
    std::string lock_mode = "none";  // none | fine | coarse
    // frame
    double fps = 24.0;
    double critical_ms = 2.9;
    double critical_MB = 2.0;
    double compute_ms = 8.0;
    double jitter = 0.0;
    // stream
    double rate_MBps = 550.0;
    // latency
    double batch = 12500.0;
    // compute
    double total_ms = 100.0;
};

struct ExternalLockSpec {
    SimTime t_ns = 0;
    std::string task;
    int val = 1;
};

struct Scenario {
    std::string name = "scenario";
    EngineConfig engine;
    ContentionModel model;
    RegulatorConfig regulator;
    MemGuardConfig memguard;
    std::vector<TaskSpec> tasks;
    std::vector<ExternalLockSpec> external_locks;
    SimTime duration_ns = 100'000'000;
    std::uint64_t seed = 0;
    bool normalize = false;

    void validate() const;
    std::unique_ptr<Engine> build() const;
    // Fully resolved parameters (manifest: no hidden defaults).
    std::string to_json() const;
    std::uint64_t content_hash() const;
};

// Strict parse: unknown keys are hard errors (ValidationError with key path).
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

TaskDescriptor build_task(const TaskSpec& spec, const EngineConfig& cfg);

}  // namespace bwsim
