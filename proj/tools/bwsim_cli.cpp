#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bwsim/experiments.hpp"
#include "bwsim/harness.hpp"
#include "bwsim/svg.hpp"

namespace {

struct CommonOpts {
    std::string out_dir;
    std::optional<double> period_us;
    std::optional<double> quantum_us;
    std::optional<double> minperf_MBps;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--period", o.period_us, "regulator period (us)");
    cmd->add_option("--quantum", o.quantum_us, "simulation quantum (us)");
    cmd->add_option("--minperf", o.minperf_MBps, "non-holder budget (MB/s)");
    cmd->add_option("--seed", o.seed, "jitter RNG seed");
}

bwsim::ExpOptions to_exp_options(const CommonOpts& o) {
    bwsim::ExpOptions e;
    if (o.period_us) e.period_ns = static_cast<bwsim::SimTime>(*o.period_us * 1e3);
    if (o.quantum_us) e.quantum_ns = static_cast<bwsim::SimTime>(*o.quantum_us * 1e3);
    e.minperf_MBps = o.minperf_MBps;
    e.seed = o.seed;
    e.out_dir = o.out_dir;
    return e;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bwsim: memory bandwidth regulation simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string scenario_path;
    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("file", scenario_path, "scenario JSON file")->required();
    add_common(run, run_opts);

    CommonOpts exp_opts;
    std::string exp_name;
    auto* exp = app.add_subcommand("exp", "run a canned experiment");
    exp->add_option("name", exp_name, "fig2 | fig6 | fig8 | table2")->required();
    add_common(exp, exp_opts);

    std::string plot_dir;
    auto* plot = app.add_subcommand("plot", "render SVG charts from a run directory");
    plot->add_option("dir", plot_dir, "run directory with trace.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            bwsim::Scenario s = bwsim::load_scenario(scenario_path);
            if (run_opts.period_us)
                s.regulator.period_ns = static_cast<bwsim::SimTime>(*run_opts.period_us * 1e3);
            if (run_opts.quantum_us)
                s.engine.quantum_ns = static_cast<bwsim::SimTime>(*run_opts.quantum_us * 1e3);
            if (run_opts.minperf_MBps) s.regulator.minperf_MBps = *run_opts.minperf_MBps;
            if (run_opts.seed) s.seed = *run_opts.seed;
            s.validate();
            const std::string out = run_opts.out_dir.empty() ? s.name : run_opts.out_dir;
            bwsim::run_scenario_to_dir(s, out);
            std::cout << "wrote " << out << "\n";
        } else if (exp->parsed()) {
            bwsim::ExpOptions o = to_exp_options(exp_opts);
            if (o.out_dir.empty()) o.out_dir = exp_name;
            if (exp_name == "fig2") {
                bwsim::experiment_contention_sweep(o);
            } else if (exp_name == "fig6") {
                bwsim::experiment_mode_comparison(o);
            } else if (exp_name == "fig8") {
                bwsim::experiment_overloaded(o);
            } else if (exp_name == "table2") {
                bwsim::experiment_overhead_sweep(o);
            } else {
                throw bwsim::ValidationError("unknown experiment: " + exp_name);
            }
            std::cout << "wrote " << o.out_dir << "\n";
        } else if (plot->parsed()) {
            for (const auto& f : bwsim::plot_run_dir(plot_dir)) std::cout << "wrote " << f << "\n";
        }
    } catch (const bwsim::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
