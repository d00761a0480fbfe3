#include <doctest.h>

#include "bwsim/workload.hpp"

using namespace bwsim;

TEST_CASE("frame task layout and derived values") {
    EngineConfig cfg;
    const auto d = make_frame_task(24, 2.9, 2.0, 8.0, LockMode::None, cfg);
    REQUIRE(d.program.instrs.size() == 3);
    const auto& burst = std::get<MemBurst>(d.program.instrs[0]);
    CHECK(burst.lines == doctest::Approx(31'250));
    CHECK(burst.cycles == doctest::Approx(2.9e6 * 2.8));
    const auto& await = std::get<AwaitPeriod>(d.program.instrs[2]);
    CHECK(await.period_ns == 41'666'666);
    CHECK(d.record_frames);
    CHECK_FALSE(d.coarse_lock);
}

TEST_CASE("fine lock mode brackets the burst") {
    EngineConfig cfg;
    const auto d = make_frame_task(24, 2.9, 2.0, 8.0, LockMode::Fine, cfg);
    REQUIRE(d.program.instrs.size() == 5);
    CHECK(std::get<SetLock>(d.program.instrs[0]).val == 1);
    CHECK(std::holds_alternative<MemBurst>(d.program.instrs[1]));
    CHECK(std::get<SetLock>(d.program.instrs[2]).val == 0);
}

TEST_CASE("frame budget exceeding the period is rejected") {
    EngineConfig cfg;
    CHECK_THROWS_AS(make_frame_task(24, 30.0, 2.0, 15.0, LockMode::None, cfg), ValidationError);
}

TEST_CASE("stream task demand rate") {
    EngineConfig cfg;
    const auto d = make_stream_task(100, cfg);
    const auto& burst = std::get<MemBurst>(d.program.instrs[0]);
    // paced demand per 1ms of execution: floor-free 1562.5 lines
    const double per_ms = burst.lines * (1e6 * cfg.freq_cycles_per_ns / burst.cycles);
    CHECK(per_ms == doctest::Approx(1562.5));
    CHECK_THROWS_AS(make_stream_task(0, cfg), ValidationError);
}

TEST_CASE("latency task is a looping serial probe") {
    const auto d = make_latency_task(12'500);
    CHECK(std::get<SerialMem>(d.program.instrs[0]).accesses == doctest::Approx(12'500));
    CHECK(d.record_frames);
    CHECK(d.program.loop);
}

TEST_CASE("compute task runs once") {
    EngineConfig cfg;
    const auto d = make_compute_task(400, cfg);
    CHECK_FALSE(d.program.loop);
    CHECK(std::get<Compute>(d.program.instrs[0]).cycles == doctest::Approx(400e6 * 2.8));
}
