#include "bwsim/workload.hpp"

#include <cmath>

namespace bwsim {

TaskDescriptor make_frame_task(double fps, double critical_ms, double critical_MB,
                               double compute_ms, LockMode lock_mode, const EngineConfig& cfg,
                               double jitter) {
    if (fps <= 0) throw ValidationError("frame task: fps must be positive");
    if (critical_ms <= 0 || critical_MB <= 0 || compute_ms < 0)
        throw ValidationError("frame task: durations and volume must be positive");
    const double period_ms = 1e3 / fps;
    if (critical_ms + compute_ms >= period_ms)
        throw ValidationError("frame task: frame budget exceeds the period");

    const double freq = cfg.freq_cycles_per_ns;
    TaskDescriptor d;
    d.record_frames = true;
    d.jitter = jitter;
    d.coarse_lock = (lock_mode == LockMode::Coarse);
    auto& p = d.program.instrs;
    if (lock_mode == LockMode::Fine) p.push_back(SetLock{1});
    p.push_back(MemBurst{critical_MB * 1e6 / kLineBytes, critical_ms * 1e6 * freq});
    if (lock_mode == LockMode::Fine) p.push_back(SetLock{0});
    p.push_back(Compute{compute_ms * 1e6 * freq});
    p.push_back(AwaitPeriod{static_cast<SimTime>(std::floor(1e9 / fps))});
    return d;
}

TaskDescriptor make_stream_task(double rate_MBps, const EngineConfig& cfg) {
    if (rate_MBps <= 0) throw ValidationError("stream task: rate must be positive");
    // One long always-eager burst at the requested demand rate. A single
    // instruction (rather than short chunks) keeps the paced per-quantum
    // demand constant, so there is no low-demand quantum at chunk tails.
    const double chunk_s = 3600.0;
    TaskDescriptor d;
    d.program.instrs.push_back(MemBurst{rate_MBps * 1e6 * chunk_s / kLineBytes,
                                        chunk_s * 1e9 * cfg.freq_cycles_per_ns});
    return d;
}

TaskDescriptor make_latency_task(double accesses_per_batch) {
    if (accesses_per_batch <= 0) throw ValidationError("latency task: batch must be positive");
    TaskDescriptor d;
    d.record_frames = true;  // one record per batch
    d.program.instrs.push_back(SerialMem{accesses_per_batch});
    return d;
}

TaskDescriptor make_compute_task(double total_ms, const EngineConfig& cfg) {
    if (total_ms <= 0) throw ValidationError("compute task: duration must be positive");
    TaskDescriptor d;
    d.program.loop = false;
    d.program.iterations = 1;
    d.program.instrs.push_back(Compute{total_ms * 1e6 * cfg.freq_cycles_per_ns});
    return d;
}

}  // namespace bwsim
