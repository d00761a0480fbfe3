#include <doctest.h>

#include "bwsim/metrics.hpp"

using namespace bwsim;

TEST_CASE("nearest-rank percentile") {
    CHECK(percentile({5}, 0) == 5);
    CHECK(percentile({5}, 99) == 5);
    std::vector<double> v;
    for (int i = 1; i <= 100; ++i) v.push_back(i);
    CHECK(percentile(v, 99) == 99);
    CHECK(percentile({1, 2, 3, 4}, 50) == 2);
    CHECK_THROWS(percentile({}, 50));
    CHECK_THROWS(percentile({1}, 101));
}

TEST_CASE("normalization directions") {
    Summary obs, base;
    base.tasks["mp"].mean_frame_ns = 2.9e6;
    base.tasks["mp"].frames = 10;
    base.tasks["mp"].throughput_MBps = 550;
    obs.tasks["mp"].mean_frame_ns = 5.9e6;
    obs.tasks["mp"].frames = 10;
    obs.tasks["mp"].throughput_MBps = 275;
    const Summary n = normalize(obs, base);
    CHECK(n.normalized_rt.at("mp") == doctest::Approx(2.9 / 5.9));
    CHECK(n.normalized_throughput.at("mp") == doctest::Approx(0.5));

    const Summary self = normalize(base, base);
    CHECK(self.normalized_rt.at("mp") == doctest::Approx(1.0));
    CHECK(self.normalized_throughput.at("mp") == doctest::Approx(1.0));

    Summary missing;
    missing.tasks["other"] = {};
    CHECK_THROWS(normalize(missing, base));
}

TEST_CASE("csv exports are header-only for an empty log") {
    MetricsLog log;
    CHECK(export_trace_csv(log) ==
          "t_ns,core,misses,frac_task,frac_throttled,frac_idle,frac_interrupt\n");
    CHECK(export_frames_csv(log) == "task,frame,start_ns,end_ns,proc_ns\n");
    CHECK(export_summary_csv(log) == "key,value\n");
}

TEST_CASE("format_double round trips shortest form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1562) == "1562");
    CHECK(format_double(2.9) == "2.9");
}
