#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bwsim/types.hpp"

namespace bwsim {

// Program instructions. A task is a looping sequence of these.
struct Compute {
    double cycles;
};
// A burst of line fetches with overlapped compute; completes when both the
// lines and the cycles are done (progress advances them proportionally).
struct MemBurst {
    double lines;
    double cycles;
};
// Fully serialized dependent line fetches (pointer chasing); one outstanding
// access at a time, each taking L0 * phi(U).
struct SerialMem {
    double accesses;
};
struct SetLock {
    int val;
};
struct AwaitPeriod {
    SimTime period_ns;
};

using Instr = std::variant<Compute, MemBurst, SerialMem, SetLock, AwaitPeriod>;

struct Program {
    std::vector<Instr> instrs;
    bool loop = true;
    std::int64_t iterations = 0;  // used when loop == false (0 = run once)
};

enum class LockMode { None, Fine, Coarse };

struct TaskDescriptor {
    int id = -1;
    std::string name;
    int affinity = 0;
    SimTime arrival = 0;
    Program program;
    bool coarse_lock = false;
    bool record_frames = false;  // record one FrameRecord per loop iteration
    double jitter = 0.0;         // uniform +-jitter fraction on compute cycles
};

// Generators for the three workload archetypes plus a plain compute benchmark.
TaskDescriptor make_frame_task(double fps, double critical_ms, double critical_MB,
                               double compute_ms, LockMode lock_mode,
                               const EngineConfig& cfg, double jitter = 0.0);
TaskDescriptor make_stream_task(double rate_MBps, const EngineConfig& cfg);
TaskDescriptor make_latency_task(double accesses_per_batch);
TaskDescriptor make_compute_task(double total_ms, const EngineConfig& cfg);

}  // namespace bwsim
