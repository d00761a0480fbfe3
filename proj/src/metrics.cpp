#include "bwsim/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bwsim {

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of empty sample");
    if (p < 0 || p > 100) throw std::invalid_argument("percentile p must be in [0,100]");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    if (rank == 0) rank = 1;
    return values[rank - 1];
}

Summary normalize(const Summary& observed, const Summary& baseline) {
    Summary out = observed;
    for (const auto& [name, obs] : observed.tasks) {
        auto it = baseline.tasks.find(name);
        if (it == baseline.tasks.end())
            throw std::invalid_argument("normalize: no baseline for task " + name);
        const TaskSummary& base = it->second;
        if (obs.frames > 0 && base.mean_frame_ns > 0)
            out.normalized_rt[name] = base.mean_frame_ns / obs.mean_frame_ns;
        if (base.throughput_MBps > 0)
            out.normalized_throughput[name] = obs.throughput_MBps / base.throughput_MBps;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string export_trace_csv(const MetricsLog& log) {
    std::ostringstream os;
    os << "t_ns,core,misses,frac_task,frac_throttled,frac_idle,frac_interrupt\n";
    for (const auto& s : log.trace) {
        os << s.t_ns << ',' << s.core << ',' << s.misses << ',' << format_double(s.frac_task)
           << ',' << format_double(s.frac_throttled) << ',' << format_double(s.frac_idle) << ','
           << format_double(s.frac_interrupt) << '\n';
    }
    return os.str();
}

std::string export_frames_csv(const MetricsLog& log) {
    std::ostringstream os;
    os << "task,frame,start_ns,end_ns,proc_ns\n";
    for (const auto& f : log.frames) {
        os << f.task << ',' << f.frame << ',' << f.start_ns << ',' << f.end_ns << ','
           << f.proc_ns() << '\n';
    }
    return os.str();
}

std::string export_summary_csv(const MetricsLog& log) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [kind, count] : log.core_quanta) os << "quanta_" << kind << ',' << count << '\n';
    for (const auto& [name, t] : log.summary.tasks) {
        os << "frames/" << name << ',' << t.frames << '\n';
        if (t.frames > 0) {
            os << "frame_time_mean_ns/" << name << ',' << format_double(t.mean_frame_ns) << '\n';
            os << "frame_time_p99_ns/" << name << ',' << format_double(t.p99_frame_ns) << '\n';
        }
        os << "throughput_MBps/" << name << ',' << format_double(t.throughput_MBps) << '\n';
        os << "total_misses/" << name << ',' << t.total_misses << '\n';
        if (t.finish_ns >= 0) os << "finish_ns/" << name << ',' << t.finish_ns << '\n';
    }
    for (const auto& [name, v] : log.summary.normalized_rt)
        os << "normalized_rt/" << name << ',' << format_double(v) << '\n';
    for (const auto& [name, v] : log.summary.normalized_throughput)
        os << "normalized_throughput/" << name << ',' << format_double(v) << '\n';
    return os.str();
}

}  // namespace bwsim
