#include "bwsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bwsim {

namespace {
constexpr double kEps = 1e-9;
constexpr double kBudgetEps = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Engine::Engine(EngineConfig cfg, ContentionModel model, RegulatorConfig reg,
               MemGuardConfig memguard, std::uint64_t seed)
    : cfg_(cfg), model_(model), reg_(reg), mg_cfg_(std::move(memguard)), seed_(seed) {
    reg_.validate();
    cfg_.validate(reg_.period_ns);
    model_.validate();
    cores_.resize(cfg_.core_count);
    for (int i = 0; i < cfg_.core_count; ++i) cores_[i].id = i;
    mg_.init(cfg_.core_count);
    if (reg_.mode == RegMode::MemGuard) {
        mg_cfg_.validate(cfg_.core_count, model_.peak_Bps / 1e6);
        for (int i = 0; i < cfg_.core_count; ++i)
            mg_.reserve_lines[i] =
                static_cast<double>(lines_per_period(mg_cfg_.reserve_MBps[i], reg_.period_ns));
    }
    last_usage_.assign(cfg_.core_count, 0.0);
}

int Engine::add_task(TaskDescriptor desc) {
    if (desc.affinity < 0 || desc.affinity >= cfg_.core_count)
        throw ValidationError("task affinity out of range: " + std::to_string(desc.affinity));
    if (desc.coarse_lock)
        for (const auto& ins : desc.program.instrs)
            if (std::holds_alternative<SetLock>(ins))
                throw ValidationError("coarse_lock and in-program SetLock are mutually exclusive");
    const int id = static_cast<int>(tasks_.size());
    desc.id = id;
    if (desc.name.empty()) desc.name = "task" + std::to_string(id);
    TaskRuntime t;
    t.desc = std::move(desc);
    t.activation = t.desc.arrival;
    t.rng.seed(seed_ ^ (0x9e3779b97f4a7c15ULL * (id + 1)));
    tasks_.push_back(std::move(t));
    cores_[tasks_.back().desc.affinity].resident.push_back(id);
    return id;
}

void Engine::add_external_lock(ExternalLockEvent ev) {
    external_locks_.push_back(ev);
    std::stable_sort(external_locks_.begin(), external_locks_.end(),
                     [](const ExternalLockEvent& a, const ExternalLockEvent& b) { return a.at < b.at; });
}

void Engine::set_lock(int target_task, int val, int /*issuing_task*/) {
    if (target_task < 0 || target_task >= static_cast<int>(tasks_.size()))
        throw std::runtime_error("bwlock: unknown task id " + std::to_string(target_task));
    if (val < 0) throw std::runtime_error("bwlock: val must be >= 0");
    tasks_[target_task].bwlock_val = val;
}

int Engine::effective_lock(const CoreState& core) const {
    if (core.throttled || core.occupant == kIdle) return 0;
    const TaskRuntime& t = tasks_[core.occupant];
    if (!t.runnable(clock_)) return 0;
    if (t.desc.coarse_lock) return std::max(1, t.bwlock_val);
    return t.bwlock_val;
}

int Engine::nr_bwlocked_cores() const {
    int n = 0;
    for (const auto& c : cores_)
        if (effective_lock(c) > 0) ++n;
    return n;
}

void Engine::fire_events() {
    const SimTime now = clock_;
    while (next_lock_event_ < external_locks_.size() && external_locks_[next_lock_event_].at <= now) {
        const auto& ev = external_locks_[next_lock_event_++];
        set_lock(ev.task, ev.val, -1);
    }
    for (auto& t : tasks_)
        if (!t.arrived && t.desc.arrival <= now) t.arrived = true;
    for (auto& t : tasks_)
        if (t.sleeping && t.wake_at <= now) t.sleeping = false;
}

void Engine::dispatch_all() {
    const SimTime now = clock_;
    for (auto& core : cores_) {
        if (core.throttled) continue;  // kthrottle holds the core
        int best = kIdle;
        double best_cum = 0;
        for (int tid : core.resident) {
            const TaskRuntime& t = tasks_[tid];
            if (!t.runnable(now)) continue;
            if (best == kIdle || t.cum_runtime_ns < best_cum) {
                best = tid;
                best_cum = t.cum_runtime_ns;
            }
        }
        const bool occ_runnable =
            core.occupant != kIdle && tasks_[core.occupant].runnable(now);
        if (!occ_runnable) {
            core.occupant = best;
            core.consec_ns = 0;
            continue;
        }
        if (best == kIdle || best == core.occupant) continue;
        const double occ_cum = tasks_[core.occupant].cum_runtime_ns;
        const bool wake_preempt =
            best_cum + static_cast<double>(cfg_.timeslice_ns) <= occ_cum;
        const bool slice_expired = core.consec_ns >= cfg_.timeslice_ns && best_cum <= occ_cum;
        if (wake_preempt || slice_expired) {
            core.occupant = best;
            core.consec_ns = 0;
        }
    }
}

void Engine::assign_budgets() {
    if (reg_.mode == RegMode::MemGuard) {
        mg_.on_period_boundary(last_usage_, mg_cfg_);
        for (auto& c : cores_) {
            c.budget_unlimited = false;
            c.budget_assigned = c.budget_remaining = 0;  // tracked by mg_
        }
        return;
    }
    if (reg_.mode == RegMode::BwLock && nr_bwlocked_cores() > 0) {
        const auto minperf = static_cast<double>(lines_per_period(reg_.minperf_MBps, reg_.period_ns));
        for (auto& c : cores_) {
            if (effective_lock(c) > 0) {
                c.budget_unlimited = true;
            } else {
                c.budget_unlimited = false;
                c.budget_assigned = c.budget_remaining = minperf;
            }
        }
        return;
    }
    for (auto& c : cores_) c.budget_unlimited = true;
}

double Engine::budget_available(const CoreState& core) const {
    if (reg_.mode == RegMode::MemGuard) return std::max(0.0, mg_.available(core.id));
    return core.budget_unlimited ? kInf : std::max(0.0, core.budget_remaining);
}

void Engine::consume_budget(CoreState& core, double lines) {
    if (lines <= 0) return;
    if (reg_.mode == RegMode::MemGuard) {
        mg_.consume(core.id, lines);
    } else if (!core.budget_unlimited) {
        core.budget_remaining -= lines;
    }
    if (reg_.mode != RegMode::Unregulated && budget_available(core) <= kBudgetEps &&
        !core.budget_unlimited) {
        core.overflow = true;
        core.throttled = true;  // kthrottle until the next boundary
    }
}

void Engine::ensure_instr_started(TaskRuntime& t) {
    if (t.instr_started) return;
    const Instr& ins = t.desc.program.instrs[t.pc];
    if (const auto* c = std::get_if<Compute>(&ins)) {
        double mult = 1.0;
        if (t.desc.jitter > 0) {
            std::uniform_real_distribution<double> dist(1.0 - t.desc.jitter, 1.0 + t.desc.jitter);
            mult = dist(t.rng);
        }
        t.rem_cycles = c->cycles * mult;
    } else if (const auto* m = std::get_if<MemBurst>(&ins)) {
        t.rem_lines = m->lines;
        t.rem_cycles = m->cycles;
        t.instr_lines_total = m->lines;
        t.instr_cycles_total = m->cycles;
    } else if (const auto* s = std::get_if<SerialMem>(&ins)) {
        t.rem_accesses = s->accesses;
    } else if (std::get_if<SetLock>(&ins)) {
        t.rem_syscall_ns = static_cast<double>(cfg_.syscall_cost_ns);
    }
    t.instr_started = true;
}

void Engine::advance_pc(TaskRuntime& t, SimTime sub_now) {
    t.instr_started = false;
    ++t.pc;
    if (t.pc < t.desc.program.instrs.size()) return;
    ++t.iterations_done;
    if (t.desc.record_frames) {
        FrameRecord rec;
        rec.task = t.desc.name;
        rec.frame = t.frames_done++;
        rec.start_ns = t.frame_start_ns >= 0 ? static_cast<SimTime>(std::llround(t.frame_start_ns))
                                             : t.desc.arrival;
        rec.end_ns = sub_now;
        log_.frames.push_back(std::move(rec));
        t.frame_start_ns = -1;
    }
    const auto& prog = t.desc.program;
    if (!prog.loop && t.iterations_done >= std::max<std::int64_t>(1, prog.iterations)) {
        t.finished = true;
        t.finish_time = sub_now;
    } else {
        t.pc = 0;
    }
}

void Engine::execute_task(int core_id, TaskRuntime& t, double grant_lines, double serial_cap,
                          double phi) {
    auto& core = cores_[core_id];
    const double freq = cfg_.freq_cycles_per_ns;
    double avail_ns = static_cast<double>(cfg_.quantum_ns);
    double grant_rem = grant_lines;
    double serial_rem = serial_cap;
    double consumed = 0;

    while (avail_ns > kEps && !t.finished && !t.sleeping) {
        const double sub_now = static_cast<double>(clock_) +
                               (static_cast<double>(cfg_.quantum_ns) - avail_ns);
        if (t.pc == 0 && t.desc.record_frames && t.frame_start_ns < 0)
            t.frame_start_ns = sub_now;
        ensure_instr_started(t);
        const Instr& ins = t.desc.program.instrs[t.pc];

        if (const auto* cp = std::get_if<Compute>(&ins)) {
            (void)cp;
            const double need_ns = t.rem_cycles / freq;
            const double use = std::min(avail_ns, need_ns);
            t.rem_cycles -= use * freq;
            avail_ns -= use;
            if (t.rem_cycles <= kEps)
                advance_pc(t, static_cast<SimTime>(std::llround(sub_now + use)));
        } else if (std::get_if<SetLock>(&ins)) {
            const double use = std::min(avail_ns, t.rem_syscall_ns);
            t.rem_syscall_ns -= use;
            avail_ns -= use;
            if (t.rem_syscall_ns <= kEps) {
                set_lock(t.desc.id, std::get<SetLock>(ins).val, t.desc.id);
                advance_pc(t, static_cast<SimTime>(std::llround(sub_now + use)));
            }
        } else if (std::get_if<MemBurst>(&ins)) {
            if (t.instr_lines_total <= 0 || t.instr_cycles_total <= 0) {
                advance_pc(t, static_cast<SimTime>(std::llround(sub_now)));
                continue;
            }
            const double f_rem = t.rem_lines / t.instr_lines_total;
            const double f_time = avail_ns * freq / t.instr_cycles_total;
            const double f_grant = grant_rem / t.instr_lines_total;
            const double f = std::min({f_rem, f_time, f_grant});
            const double lines = f * t.instr_lines_total;
            const double cycles = f * t.instr_cycles_total;
            t.rem_lines -= lines;
            t.rem_cycles -= cycles;
            grant_rem -= lines;
            consumed += lines;
            const double used_ns = cycles / freq;
            avail_ns -= used_ns;
            if (t.rem_lines <= kEps) {
                advance_pc(t, static_cast<SimTime>(std::llround(sub_now + used_ns)));
            } else if (grant_rem <= kEps) {
                avail_ns = 0;  // stalled on memory for the rest of the quantum
            }
        } else if (std::get_if<SerialMem>(&ins)) {
            const double per_access_ns = model_.L0_ns * phi;
            const double n =
                std::min({t.rem_accesses, avail_ns / per_access_ns, serial_rem});
            t.rem_accesses -= n;
            serial_rem -= n;
            consumed += n;
            const double used_ns = n * per_access_ns;
            avail_ns -= used_ns;
            if (t.rem_accesses <= kEps) {
                advance_pc(t, static_cast<SimTime>(std::llround(sub_now + used_ns)));
            } else if (serial_rem <= kEps) {
                avail_ns = 0;  // serialized accesses saturated this quantum
            }
        } else if (const auto* ap = std::get_if<AwaitPeriod>(&ins)) {
            const auto end_ns = static_cast<SimTime>(std::llround(sub_now));
            t.activation += ap->period_ns;
            advance_pc(t, end_ns);
            if (t.activation > end_ns) {
                t.sleeping = true;
                t.wake_at = t.activation;
            }
            // overrun: the next frame starts immediately
        }
    }

    core.cum_lines += consumed;
    core.period_consumed += consumed;
    t.total_lines += consumed;
    consume_budget(core, consumed);
}

void Engine::advance_quantum() {
    const SimTime now = clock_;
    std::vector<CoreRequest> requests(cores_.size());
    for (std::size_t i = 0; i < cores_.size(); ++i) {
        auto& core = cores_[i];
        if (core.interrupt_quanta > 0 || core.throttled || core.occupant == kIdle) continue;
        TaskRuntime& t = tasks_[core.occupant];
        if (!t.runnable(now)) continue;
        ensure_instr_started(t);
        const Instr& ins = t.desc.program.instrs[t.pc];
        const double budget = budget_available(core);
        if (std::get_if<MemBurst>(&ins)) {
            if (t.instr_cycles_total > 0) {
                const double f_time =
                    static_cast<double>(cfg_.quantum_ns) * cfg_.freq_cycles_per_ns /
                    t.instr_cycles_total;
                const double paced = std::min(t.rem_lines, f_time * t.instr_lines_total);
                requests[i].burst_demand = std::min(paced, budget);
            }
        } else if (std::get_if<SerialMem>(&ins)) {
            const double desired =
                std::min(t.rem_accesses, static_cast<double>(cfg_.quantum_ns) / model_.L0_ns);
            requests[i].serial_desired = std::min(desired, budget);
        }
    }

    const QuantumPlan plan = plan_quantum(requests, cfg_.quantum_ns, model_);

    // Execution (and memguard pool draws) proceed in core-id order.
    for (std::size_t i = 0; i < cores_.size(); ++i) {
        auto& core = cores_[i];
        if (core.interrupt_quanta > 0 || core.throttled || core.occupant == kIdle) continue;
        TaskRuntime& t = tasks_[core.occupant];
        if (!t.runnable(now)) continue;
        execute_task(static_cast<int>(i), t, plan.burst_grant[i], plan.serial_cap[i], plan.phi);
    }
}

void Engine::close_period(SimTime period_start) {
    const auto quanta_per_period =
        static_cast<double>(reg_.period_ns / cfg_.quantum_ns);
    for (std::size_t i = 0; i < cores_.size(); ++i) {
        auto& core = cores_[i];
        PeriodSample s;
        s.t_ns = period_start;
        s.core = static_cast<int>(i);
        const auto total = static_cast<std::int64_t>(std::floor(core.cum_lines + kEps));
        s.misses = total - core.reported_lines;
        core.reported_lines = total;
        s.frac_idle = core.period_quanta[0] / quanta_per_period;
        s.frac_task = core.period_quanta[1] / quanta_per_period;
        s.frac_throttled = core.period_quanta[2] / quanta_per_period;
        s.frac_interrupt = core.period_quanta[3] / quanta_per_period;
        log_.trace.push_back(s);
        for (auto& p : core.period_quanta) p = 0;
        last_usage_[i] = core.period_consumed;
        core.period_consumed = 0;
    }
}

void Engine::step() {
    if (finalized_) throw std::logic_error("engine already finalized");
    const SimTime now = clock_;
    const bool boundary = (now % reg_.period_ns) == 0;

    if (boundary) {
        if (now > 0) close_period(now - reg_.period_ns);
        for (auto& c : cores_) {
            c.throttled = false;  // re-activate suspended cores
            c.overflow = false;
        }
        if (cfg_.handler_cost_ns > 0) {
            const int iq = static_cast<int>(
                (cfg_.handler_cost_ns + cfg_.quantum_ns - 1) / cfg_.quantum_ns);
            for (auto& c : cores_) c.interrupt_quanta += iq;
        }
        any_boundary_seen_ = true;
    }

    fire_events();
    dispatch_all();
    if (boundary) assign_budgets();

    // classify each core before progress: throttling raised mid-quantum
    // takes effect from the next quantum
    std::vector<QuantumClass> cls(cores_.size());
    for (std::size_t i = 0; i < cores_.size(); ++i) {
        const auto& core = cores_[i];
        if (core.interrupt_quanta > 0)
            cls[i] = QuantumClass::Interrupt;
        else if (core.throttled)
            cls[i] = QuantumClass::Throttled;
        else if (core.occupant != kIdle)
            cls[i] = QuantumClass::Task;
        else
            cls[i] = QuantumClass::Idle;
    }

    advance_quantum();

    for (std::size_t i = 0; i < cores_.size(); ++i) {
        auto& core = cores_[i];
        if (cls[i] == QuantumClass::Interrupt) --core.interrupt_quanta;
        core.quanta[static_cast<int>(cls[i])]++;
        core.period_quanta[static_cast<int>(cls[i])]++;
        if ((cls[i] == QuantumClass::Task || cls[i] == QuantumClass::Throttled) &&
            core.occupant != kIdle) {
            tasks_[core.occupant].cum_runtime_ns += static_cast<double>(cfg_.quantum_ns);
            core.consec_ns += cfg_.quantum_ns;
        }
    }

    clock_ += cfg_.quantum_ns;
}

const MetricsLog& Engine::run_until(SimTime t) {
    if (t < clock_) throw std::invalid_argument("run_until: target time is in the past");
    while (clock_ < t) step();
    return log_;
}

MetricsLog& Engine::finalize() {
    if (finalized_) return log_;
    if (clock_ > 0 && (clock_ % reg_.period_ns) == 0) close_period(clock_ - reg_.period_ns);
    // summaries
    std::map<std::string, std::vector<double>> frame_times;
    for (const auto& f : log_.frames) frame_times[f.task].push_back(static_cast<double>(f.proc_ns()));
    for (const auto& t : tasks_) {
        TaskSummary ts;
        ts.total_misses = static_cast<std::int64_t>(std::floor(t.total_lines + kEps));
        if (t.finish_time) ts.finish_ns = *t.finish_time;
        const double secs = static_cast<double>(clock_) / 1e9;
        if (secs > 0) ts.throughput_MBps = t.total_lines * kLineBytes / secs / 1e6;
        auto it = frame_times.find(t.desc.name);
        if (it != frame_times.end() && !it->second.empty()) {
            const auto& v = it->second;
            double sum = 0;
            for (double x : v) sum += x;
            ts.frames = static_cast<std::int64_t>(v.size());
            ts.mean_frame_ns = sum / static_cast<double>(v.size());
            ts.p99_frame_ns = percentile(v, 99.0);
        }
        log_.summary.tasks[t.desc.name] = ts;
    }
    const char* names[4] = {"idle", "task", "throttled", "interrupt"};
    for (int k = 0; k < 4; ++k) {
        std::int64_t total = 0;
        for (const auto& c : cores_) total += c.quanta[k];
        log_.core_quanta[names[k]] = total;
    }
    finalized_ = true;
    return log_;
}

}  // namespace bwsim
