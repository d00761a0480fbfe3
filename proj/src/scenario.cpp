#include "bwsim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bwsim {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
}

template <typename T>
void get_if_present(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario parse error: ") + e.what());
    }
    Scenario s;
    check_keys(j, "scenario",
               {"name", "engine", "model", "regulator", "memguard", "tasks", "external_locks",
                "duration_ns", "seed", "normalize"});
    get_if_present(j, "name", s.name);
    if (j.contains("engine")) {
        const auto& e = j["engine"];
        check_keys(e, "engine",
                   {"quantum_ns", "core_count", "freq_cycles_per_ns", "timeslice_ns",
                    "syscall_cost_ns", "handler_cost_ns"});
        get_if_present(e, "quantum_ns", s.engine.quantum_ns);
        get_if_present(e, "core_count", s.engine.core_count);
        get_if_present(e, "freq_cycles_per_ns", s.engine.freq_cycles_per_ns);
        get_if_present(e, "timeslice_ns", s.engine.timeslice_ns);
        get_if_present(e, "syscall_cost_ns", s.engine.syscall_cost_ns);
        get_if_present(e, "handler_cost_ns", s.engine.handler_cost_ns);
    }
    if (j.contains("model")) {
        const auto& m = j["model"];
        check_keys(m, "model", {"peak_Bps", "L0_ns", "U0", "alpha", "phi_max"});
        get_if_present(m, "peak_Bps", s.model.peak_Bps);
        get_if_present(m, "L0_ns", s.model.L0_ns);
        get_if_present(m, "U0", s.model.U0);
        get_if_present(m, "alpha", s.model.alpha);
        get_if_present(m, "phi_max", s.model.phi_max);
    }
    if (j.contains("regulator")) {
        const auto& r = j["regulator"];
        check_keys(r, "regulator", {"mode", "period_ns", "minperf_MBps"});
        std::string mode = to_string(s.regulator.mode);
        get_if_present(r, "mode", mode);
        s.regulator.mode = reg_mode_from_string(mode);
        get_if_present(r, "period_ns", s.regulator.period_ns);
        get_if_present(r, "minperf_MBps", s.regulator.minperf_MBps);
    }
    if (j.contains("memguard")) {
        const auto& m = j["memguard"];
        check_keys(m, "memguard", {"reserve_MBps", "reclaim", "ewma_alpha"});
        get_if_present(m, "reserve_MBps", s.memguard.reserve_MBps);
        get_if_present(m, "reclaim", s.memguard.reclaim);
        get_if_present(m, "ewma_alpha", s.memguard.ewma_alpha);
    }
    if (j.contains("tasks")) {
        if (!j["tasks"].is_array()) throw ValidationError("tasks: expected an array");
        for (std::size_t i = 0; i < j["tasks"].size(); ++i) {
            const auto& t = j["tasks"][i];
            const std::string where = "tasks[" + std::to_string(i) + "]";
            check_keys(t, where,
                       {"generator", "name", "core", "arrival_ns", "lock_mode", "fps",
                        "critical_ms", "critical_MB", "compute_ms", "jitter", "rate_MBps",
                        "batch", "total_ms"});
            TaskSpec ts;
            if (!t.contains("generator")) throw ValidationError(where + ": missing 'generator'");
            ts.generator = t["generator"].get<std::string>();
            get_if_present(t, "name", ts.name);
            get_if_present(t, "core", ts.core);
            get_if_present(t, "arrival_ns", ts.arrival_ns);
            get_if_present(t, "lock_mode", ts.lock_mode);
            get_if_present(t, "fps", ts.fps);
            get_if_present(t, "critical_ms", ts.critical_ms);
            get_if_present(t, "critical_MB", ts.critical_MB);
            get_if_present(t, "compute_ms", ts.compute_ms);
            get_if_present(t, "jitter", ts.jitter);
            get_if_present(t, "rate_MBps", ts.rate_MBps);
            get_if_present(t, "batch", ts.batch);
            get_if_present(t, "total_ms", ts.total_ms);
            if (ts.name.empty()) ts.name = ts.generator + std::to_string(i);
            s.tasks.push_back(std::move(ts));
        }
    }
    if (j.contains("external_locks")) {
        if (!j["external_locks"].is_array())
            throw ValidationError("external_locks: expected an array");
        for (std::size_t i = 0; i < j["external_locks"].size(); ++i) {
            const auto& e = j["external_locks"][i];
            const std::string where = "external_locks[" + std::to_string(i) + "]";
            check_keys(e, where, {"t_ns", "task", "val"});
            ExternalLockSpec ls;
            get_if_present(e, "t_ns", ls.t_ns);
            if (!e.contains("task")) throw ValidationError(where + ": missing 'task'");
            ls.task = e["task"].get<std::string>();
            get_if_present(e, "val", ls.val);
            s.external_locks.push_back(std::move(ls));
        }
    }
    get_if_present(j, "duration_ns", s.duration_ns);
    get_if_present(j, "seed", s.seed);
    get_if_present(j, "normalize", s.normalize);
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

TaskDescriptor build_task(const TaskSpec& spec, const EngineConfig& cfg) {
    LockMode lm;
    if (spec.lock_mode == "none")
        lm = LockMode::None;
    else if (spec.lock_mode == "fine")
        lm = LockMode::Fine;
    else if (spec.lock_mode == "coarse")
        lm = LockMode::Coarse;
    else
        throw ValidationError("task " + spec.name + ": unknown lock_mode '" + spec.lock_mode + "'");

    TaskDescriptor d;
    if (spec.generator == "frame") {
        d = make_frame_task(spec.fps, spec.critical_ms, spec.critical_MB, spec.compute_ms, lm,
                            cfg, spec.jitter);
    } else if (spec.generator == "stream") {
        d = make_stream_task(spec.rate_MBps, cfg);
    } else if (spec.generator == "latency") {
        d = make_latency_task(spec.batch);
    } else if (spec.generator == "compute") {
        d = make_compute_task(spec.total_ms, cfg);
    } else {
        throw ValidationError("task " + spec.name + ": unknown generator '" + spec.generator + "'");
    }
    if (spec.generator != "frame" && lm == LockMode::Coarse) d.coarse_lock = true;
    if (spec.generator != "frame" && lm == LockMode::Fine)
        throw ValidationError("task " + spec.name + ": fine locking requires the frame generator");
    d.name = spec.name;
    d.affinity = spec.core;
    d.arrival = spec.arrival_ns;
    return d;
}

void Scenario::validate() const {
    regulator.validate();
    engine.validate(regulator.period_ns);
    model.validate();
    if (duration_ns <= 0 || duration_ns % regulator.period_ns != 0)
        throw ValidationError("duration must be a positive multiple of the regulator period");
    if (regulator.mode == RegMode::MemGuard)
        memguard.validate(engine.core_count, model.peak_Bps / 1e6);
    std::set<std::string> names;
    for (const auto& t : tasks) {
        if (t.core < 0 || t.core >= engine.core_count)
            throw ValidationError("task " + t.name + ": affinity " + std::to_string(t.core) +
                                  " out of range for " + std::to_string(engine.core_count) +
                                  " cores");
        if (!names.insert(t.name).second)
            throw ValidationError("duplicate task name: " + t.name);
    }
    for (const auto& e : external_locks)
        if (!names.count(e.task))
            throw ValidationError("external lock references unknown task: " + e.task);
}

std::unique_ptr<Engine> Scenario::build() const {
    validate();
    auto engine_ptr = std::make_unique<Engine>(engine, model, regulator, memguard, seed);
    std::map<std::string, int> ids;
    for (const auto& t : tasks) ids[t.name] = engine_ptr->add_task(build_task(t, engine));
    for (const auto& e : external_locks)
        engine_ptr->add_external_lock({e.t_ns, ids.at(e.task), e.val});
    return engine_ptr;
}

std::string Scenario::to_json() const {
    json j;
    j["name"] = name;
    j["engine"] = {{"quantum_ns", engine.quantum_ns},
                   {"core_count", engine.core_count},
                   {"freq_cycles_per_ns", engine.freq_cycles_per_ns},
                   {"timeslice_ns", engine.timeslice_ns},
                   {"syscall_cost_ns", engine.syscall_cost_ns},
                   {"handler_cost_ns", engine.handler_cost_ns}};
    j["model"] = {{"peak_Bps", model.peak_Bps},
                  {"L0_ns", model.L0_ns},
                  {"U0", model.U0},
                  {"alpha", model.alpha},
                  {"phi_max", model.phi_max}};
    j["regulator"] = {{"mode", to_string(regulator.mode)},
                      {"period_ns", regulator.period_ns},
                      {"minperf_MBps", regulator.minperf_MBps}};
    if (regulator.mode == RegMode::MemGuard)
        j["memguard"] = {{"reserve_MBps", memguard.reserve_MBps},
                         {"reclaim", memguard.reclaim},
                         {"ewma_alpha", memguard.ewma_alpha}};
    j["tasks"] = json::array();
    for (const auto& t : tasks) {
        json tj = {{"generator", t.generator}, {"name", t.name},      {"core", t.core},
                   {"arrival_ns", t.arrival_ns}, {"lock_mode", t.lock_mode}};
        if (t.generator == "frame") {
            tj["fps"] = t.fps;
            tj["critical_ms"] = t.critical_ms;
            tj["critical_MB"] = t.critical_MB;
            tj["compute_ms"] = t.compute_ms;
            tj["jitter"] = t.jitter;
        } else if (t.generator == "stream") {
            tj["rate_MBps"] = t.rate_MBps;
        } else if (t.generator == "latency") {
            tj["batch"] = t.batch;
        } else if (t.generator == "compute") {
            tj["total_ms"] = t.total_ms;
        }
        j["tasks"].push_back(std::move(tj));
    }
    j["external_locks"] = json::array();
    for (const auto& e : external_locks)
        j["external_locks"].push_back({{"t_ns", e.t_ns}, {"task", e.task}, {"val", e.val}});
    j["duration_ns"] = duration_ns;
    j["seed"] = seed;
    j["normalize"] = normalize;
    return j.dump(2);
}

std::uint64_t Scenario::content_hash() const {
    // FNV-1a over the resolved JSON
    const std::string text = to_json();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace bwsim
