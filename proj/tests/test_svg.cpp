#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bwsim/harness.hpp"
#include "bwsim/svg.hpp"

using namespace bwsim;
namespace fs = std::filesystem;

namespace {

std::vector<PeriodSample> sample_trace() {
    std::vector<PeriodSample> trace;
    for (int p = 0; p < 10; ++p)
        for (int c = 0; c < 4; ++c) {
            PeriodSample s;
            s.t_ns = p * 1'000'000;
            s.core = c;
            s.misses = 100 * c + p;
            s.frac_task = 1.0;
            trace.push_back(s);
        }
    return trace;
}

}  // namespace

TEST_CASE("trace svg has one panel per core and is deterministic") {
    const auto trace = sample_trace();
    const std::string svg = render_trace_svg(trace);
    CHECK(svg == render_trace_svg(trace));
    int panels = 0;
    for (std::size_t pos = 0; (pos = svg.find("misses/period", pos)) != std::string::npos; ++pos)
        ++panels;
    CHECK(panels == 4);
}

TEST_CASE("empty frame table renders nothing") {
    CHECK(render_frames_svg({}).empty());
}

TEST_CASE("csv parsers round trip exporter output") {
    MetricsLog log;
    log.trace = sample_trace();
    FrameRecord f;
    f.task = "mp";
    f.frame = 0;
    f.start_ns = 100;
    f.end_ns = 2'900'100;
    log.frames.push_back(f);
    const auto trace2 = parse_trace_csv(export_trace_csv(log));
    REQUIRE(trace2.size() == log.trace.size());
    CHECK(trace2[5].misses == log.trace[5].misses);
    const auto frames2 = parse_frames_csv(export_frames_csv(log));
    REQUIRE(frames2.size() == 1);
    CHECK(frames2[0].proc_ns() == 2'900'000);
    CHECK_THROWS(parse_trace_csv("t_ns\n1,2\n"));
}

TEST_CASE("plot_run_dir renders a run directory") {
    const fs::path dir = fs::temp_directory_path() / "bwsim_svg_test";
    fs::remove_all(dir);
    Scenario s;
    s.duration_ns = 10'000'000;
    TaskSpec t;
    t.generator = "stream";
    t.name = "bw";
    s.tasks.push_back(t);
    run_scenario_to_dir(s, dir.string());
    const auto written = plot_run_dir(dir.string());
    REQUIRE(written.size() == 1);  // streams record no frames
    CHECK(fs::exists(dir / "trace.svg"));
    CHECK_FALSE(fs::exists(dir / "frames.svg"));
    CHECK_THROWS(plot_run_dir((dir / "nope").string()));
    fs::remove_all(dir);
}
