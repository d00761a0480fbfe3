#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bwsim/memguard.hpp"
#include "bwsim/memory_model.hpp"
#include "bwsim/metrics.hpp"
#include "bwsim/regulator.hpp"
#include "bwsim/types.hpp"
#include "bwsim/workload.hpp"

namespace bwsim {

inline constexpr int kIdle = -1;
inline constexpr int kThrottleTask = -2;  // the kthrottle pseudo-task

enum class QuantumClass { Idle, Task, Throttled, Interrupt };

struct TaskRuntime {
    TaskDescriptor desc;
    bool arrived = false;
    bool finished = false;
    bool sleeping = false;
    SimTime wake_at = 0;
    SimTime activation = 0;  // release base for AwaitPeriod

    std::size_t pc = 0;
    std::int64_t iterations_done = 0;
    bool instr_started = false;
    double rem_cycles = 0;
    double rem_lines = 0;
    double rem_accesses = 0;
    double rem_syscall_ns = 0;
    double instr_cycles_total = 0;  // MemBurst pacing denominators
    double instr_lines_total = 0;

    int bwlock_val = 0;

    double cum_runtime_ns = 0;  // scheduler fairness clock (includes throttled occupancy)
    double total_lines = 0;
    std::int64_t frames_done = 0;
    double frame_start_ns = -1;
    std::optional<SimTime> finish_time;

    std::mt19937_64 rng{0};

    bool runnable(SimTime now) const {
        return arrived && !finished && (!sleeping || wake_at <= now);
    }
};

struct CoreState {
    int id = 0;
    std::vector<int> resident;  // task ids pinned here, in declaration order
    int occupant = kIdle;       // task owning the core's current slot
    SimTime consec_ns = 0;      // occupant's continuous run time
    bool throttled = false;
    int interrupt_quanta = 0;

    // regulator budget (BwLock / static modes)
    bool budget_unlimited = true;
    double budget_assigned = 0;
    double budget_remaining = 0;
    bool overflow = false;

    // accounting
    std::int64_t quanta[4] = {0, 0, 0, 0};         // totals by QuantumClass
    std::int64_t period_quanta[4] = {0, 0, 0, 0};  // current period
    double cum_lines = 0;
    std::int64_t reported_lines = 0;  // floor(cum_lines) emitted to the trace
    double period_consumed = 0;       // lines this period (memguard prediction input)

    // "running task id": kthrottle while throttled, else occupant or idle
    int current(SimTime /*now*/) const { return throttled ? kThrottleTask : occupant; }
};

struct ExternalLockEvent {
    SimTime at = 0;
    int task = -1;
    int val = 1;
};

class Engine {
  public:
    Engine(EngineConfig cfg, ContentionModel model, RegulatorConfig reg,
           MemGuardConfig memguard, std::uint64_t seed = 0);

    int add_task(TaskDescriptor desc);  // returns task id
    void add_external_lock(ExternalLockEvent ev);

    // Advance by exactly one quantum.
    void step();
    // Step until clock >= t; t must not be in the past.
    const MetricsLog& run_until(SimTime t);

    SimTime now() const { return clock_; }
    const MetricsLog& log() const { return log_; }
    MetricsLog& finalize();  // close the trailing period, compute summaries

    const std::vector<TaskRuntime>& tasks() const { return tasks_; }
    const std::vector<CoreState>& cores() const { return cores_; }
    const EngineConfig& config() const { return cfg_; }

    // bwlock surface
    void set_lock(int target_task, int val, int issuing_task);  // syscall path
    int effective_lock(const CoreState& core) const;
    int nr_bwlocked_cores() const;

  private:
    void fire_events();
    void dispatch_all();
    void assign_budgets();
    void advance_quantum();
    void execute_task(int core_id, TaskRuntime& t, double grant_lines, double serial_cap,
                      double phi);
    void ensure_instr_started(TaskRuntime& t);
    void advance_pc(TaskRuntime& t, SimTime sub_now);
    double budget_available(const CoreState& core) const;
    void consume_budget(CoreState& core, double lines);
    void close_period(SimTime period_start);

    EngineConfig cfg_;
    ContentionModel model_;
    RegulatorConfig reg_;
    MemGuardConfig mg_cfg_;
    MemGuardState mg_;
    std::uint64_t seed_;

    SimTime clock_ = 0;
    SimTime last_period_start_ = 0;
    bool any_boundary_seen_ = false;
    std::vector<TaskRuntime> tasks_;
    std::vector<CoreState> cores_;
    std::vector<double> last_usage_;  // per-core lines consumed last period
    std::vector<ExternalLockEvent> external_locks_;
    std::size_t next_lock_event_ = 0;
    MetricsLog log_;
    bool finalized_ = false;
};

}  // namespace bwsim
