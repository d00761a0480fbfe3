#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bwsim/types.hpp"

namespace bwsim {

struct PeriodSample {
    SimTime t_ns = 0;  // period start
    int core = 0;
    std::int64_t misses = 0;
    double frac_task = 0, frac_throttled = 0, frac_idle = 0, frac_interrupt = 0;
};

struct FrameRecord {
    std::string task;
    std::int64_t frame = 0;
    SimTime start_ns = 0;
    SimTime end_ns = 0;
    SimTime proc_ns() const { return end_ns - start_ns; }
};

struct TaskSummary {
    double mean_frame_ns = 0;
    double p99_frame_ns = 0;
    std::int64_t frames = 0;
    double throughput_MBps = 0;
    std::int64_t total_misses = 0;
    SimTime finish_ns = -1;  // completion time of non-looping tasks, -1 otherwise
};

struct Summary {
    std::map<std::string, TaskSummary> tasks;
    // set by normalize(); frame-time as baseline/observed, throughput as
    // observed/baseline
    std::map<std::string, double> normalized_rt;
    std::map<std::string, double> normalized_throughput;
};

struct MetricsLog {
    std::vector<PeriodSample> trace;
    std::vector<FrameRecord> frames;
    Summary summary;
    std::map<std::string, std::int64_t> core_quanta;  // "idle"/"task"/"throttled"/"interrupt" totals
};

// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value.
double percentile(std::vector<double> values, double p);

Summary normalize(const Summary& observed, const Summary& baseline);

std::string export_trace_csv(const MetricsLog& log);
std::string export_frames_csv(const MetricsLog& log);
std::string export_summary_csv(const MetricsLog& log);

// Shortest round-trip decimal formatting ('.' separator, no padding).
std::string format_double(double v);

}  // namespace bwsim
