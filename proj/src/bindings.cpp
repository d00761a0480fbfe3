#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bwsim/harness.hpp"
#include "bwsim/memory_model.hpp"
#include "bwsim/regulator.hpp"

namespace py = pybind11;

namespace {

py::dict summary_to_dict(const bwsim::Summary& s) {
    py::dict tasks;
    for (const auto& [name, t] : s.tasks) {
        py::dict d;
        d["mean_frame_ns"] = t.mean_frame_ns;
        d["p99_frame_ns"] = t.p99_frame_ns;
        d["frames"] = t.frames;
        d["throughput_MBps"] = t.throughput_MBps;
        d["total_misses"] = t.total_misses;
        if (t.finish_ns >= 0) d["finish_ns"] = t.finish_ns;
        tasks[name.c_str()] = d;
    }
    py::dict out;
    out["tasks"] = tasks;
    out["normalized_rt"] = s.normalized_rt;
    out["normalized_throughput"] = s.normalized_throughput;
    return out;
}

py::dict run_json(const std::string& json_text) {
    const bwsim::Scenario s = bwsim::parse_scenario(json_text);
    const bwsim::RunResult r = bwsim::run_scenario(s);
    py::dict out;
    out["summary"] = summary_to_dict(r.log.summary);
    out["trace_csv"] = bwsim::export_trace_csv(r.log);
    out["frames_csv"] = bwsim::export_frames_csv(r.log);
    out["summary_csv"] = bwsim::export_summary_csv(r.log);
    out["scenario_json"] = r.scenario.to_json();
    return out;
}

}  // namespace

PYBIND11_MODULE(_bwsim, m) {
    m.doc() = "Deterministic multicore memory bandwidth regulation simulator";

    m.def("lines_per_period", &bwsim::lines_per_period, py::arg("MBps"), py::arg("period_ns"),
          "Budget conversion: floor(MBps * 1e6 * period_s / 64).");

    m.def(
        "allocate",
        [](const std::vector<double>& demands, double capacity) {
            return bwsim::allocate(demands, capacity);
        },
        py::arg("demands"), py::arg("capacity"),
        "Max-min fair (water-filling) allocation of capacity among demands.");

    m.def(
        "inflation_factor",
        [](double total_demand, double capacity) {
            return bwsim::inflation_factor(total_demand, capacity, bwsim::ContentionModel{});
        },
        py::arg("total_demand"), py::arg("capacity"),
        "Latency inflation phi(U) with default model parameters.");

    m.def("run_scenario_json", &run_json, py::arg("json_text"),
          "Parse a scenario JSON string, run it, and return summaries plus CSV text.");

    m.def(
        "run_scenario_file",
        [](const std::string& path) {
            const bwsim::Scenario s = bwsim::load_scenario(path);
            return run_json(s.to_json());
        },
        py::arg("path"), "Load a scenario file, run it, and return summaries plus CSV text.");

    py::register_exception<bwsim::ValidationError>(m, "ValidationError", PyExc_ValueError);
}
