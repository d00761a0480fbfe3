#include <doctest.h>

#include <algorithm>
#include <random>

#include "bwsim/memory_model.hpp"

using namespace bwsim;

namespace {

// Independent water-filling oracle: bisect the fill level L so that
// sum(min(d_i, L)) == capacity, then grant min(d_i, L).
std::vector<double> allocate_oracle(const std::vector<double>& demands, double capacity) {
    std::vector<double> grants(demands.size(), 0.0);
    double total = 0;
    double max_d = 0;
    for (double d : demands) {
        total += d;
        max_d = std::max(max_d, d);
    }
    if (total <= capacity) return demands;
    double lo = 0, hi = max_d;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        double served = 0;
        for (double d : demands) served += std::min(d, mid);
        (served > capacity ? hi : lo) = mid;
    }
    const double level = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < demands.size(); ++i) grants[i] = std::min(demands[i], level);
    return grants;
}

}  // namespace

TEST_CASE("allocate: single demander under capacity") {
    CHECK(allocate({500}, 1500) == std::vector<double>{500});
}

TEST_CASE("allocate: progressive fill") {
    const auto g = allocate({200, 900, 900}, 1000);
    CHECK(g[0] == doctest::Approx(200));
    CHECK(g[1] == doctest::Approx(400));
    CHECK(g[2] == doctest::Approx(400));
}

TEST_CASE("allocate: symmetric split") {
    const auto g = allocate({800, 800, 800, 800}, 1600);
    for (double x : g) CHECK(x == doctest::Approx(400));
}

TEST_CASE("allocate matches the bisection oracle on random instances") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> n_dist(1, 6);
    std::uniform_int_distribution<int> d_dist(0, 10000);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = n_dist(rng);
        std::vector<double> demands(n);
        for (auto& d : demands) d = static_cast<double>(d_dist(rng));
        const double capacity = static_cast<double>(d_dist(rng));
        const auto got = allocate(demands, capacity);
        const auto want = allocate_oracle(demands, capacity);
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-6));
            CHECK(got[i] <= demands[i] + 1e-9);
            sum += got[i];
        }
        CHECK(sum <= capacity + 1e-6);
    }
}

TEST_CASE("inflation_factor shape") {
    const ContentionModel m;
    CHECK(inflation_factor(0, 1000, m) == doctest::Approx(1.0));
    CHECK(inflation_factor(300, 1000, m) == doctest::Approx(1.0));  // at the knee
    CHECK(inflation_factor(500, 1000, m) == doctest::Approx(1.24));
    // saturation crossover: U0 + sqrt((phi_max-1)/alpha) = 0.8774
    CHECK(inflation_factor(878, 1000, m) == doctest::Approx(3.0));
    CHECK(inflation_factor(5000, 1000, m) == doctest::Approx(3.0));
}

TEST_CASE("inflation_factor is monotone non-decreasing") {
    const ContentionModel m;
    double prev = 0;
    for (int u = 0; u <= 200; ++u) {
        const double phi = inflation_factor(u * 10.0, 1000, m);
        CHECK(phi >= prev);
        prev = phi;
    }
}

TEST_CASE("plan_quantum: serialized probes served off the top") {
    ContentionModel m;
    std::vector<CoreRequest> req(2);
    req[0].serial_desired = 1000;  // way beyond the rate cap
    req[1].burst_demand = 100;
    const auto plan = plan_quantum(req, 10'000, m);
    // phi from burst demand only: U = 100/375 < U0 is false (0.267 < 0.3) -> phi 1
    CHECK(plan.phi == doctest::Approx(1.0));
    CHECK(plan.serial_cap[0] == doctest::Approx(10'000.0 / 80.0));
    CHECK(plan.burst_grant[1] == doctest::Approx(100));
}

TEST_CASE("plan_quantum: conservation under overload") {
    ContentionModel m;
    std::vector<CoreRequest> req(4);
    for (auto& r : req) r.burst_demand = 200;
    const auto plan = plan_quantum(req, 10'000, m);
    const double capacity = m.lines_per_quantum(10'000);
    double total = 0;
    for (double g : plan.burst_grant) total += g;
    CHECK(total == doctest::Approx(capacity));
    CHECK(plan.phi == doctest::Approx(3.0));  // U = 800/375
}
