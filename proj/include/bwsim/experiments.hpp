#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwsim/harness.hpp"

namespace bwsim {

struct ExpOptions {
    std::optional<SimTime> period_ns;
    std::optional<SimTime> quantum_ns;
    std::optional<double> minperf_MBps;
    std::optional<std::uint64_t> seed;
    std::string out_dir;  // when set, run dirs and the experiment CSV are written here
};

// Contention curve: latency probe vs three swept co-runner streams.
struct Fig2Row {
    double corunner_MBps;
    double normalized_latency;
};
std::vector<Fig2Row> experiment_contention_sweep(const ExpOptions& opt = {});

// Four-mode comparison on frame task + X11-like task + two streams.
struct Fig6Row {
    std::string mode;
    double rt_normalized;        // frame task, baseline/observed mean frame time
    double corunner_normalized;  // aggregate stream throughput vs solo
};
std::vector<Fig6Row> experiment_mode_comparison(const ExpOptions& opt = {});

// Overloaded system: frame task + stream per core, plus frames-only control.
struct Fig8Row {
    std::string mode;  // "default" | "fine" | "coarse" | "control"
    double mean_frame_ns;
    double aggregate_stream_MBps;
};
std::vector<Fig8Row> experiment_overloaded(const ExpOptions& opt = {});

// Period-interrupt overhead sweep on a compute-only benchmark.
struct Table2Row {
    double period_us;
    double overhead_pct;
};
std::vector<Table2Row> experiment_overhead_sweep(const ExpOptions& opt = {});

std::string fig2_csv(const std::vector<Fig2Row>& rows);
std::string fig6_csv(const std::vector<Fig6Row>& rows);
std::string fig8_csv(const std::vector<Fig8Row>& rows);
std::string table2_csv(const std::vector<Table2Row>& rows);

}  // namespace bwsim
