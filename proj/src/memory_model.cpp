#include "bwsim/memory_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bwsim {

std::vector<double> allocate(const std::vector<double>& demands, double capacity) {
    const std::size_t n = demands.size();
    std::vector<double> grants(n, 0.0);
    if (n == 0 || capacity <= 0) return grants;

    // Progressive fill: serve the smallest demands in full while the fair
    // level allows, split the remainder evenly among the rest.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return demands[a] < demands[b]; });

    double remaining = capacity;
    std::size_t k = 0;
    for (; k < n; ++k) {
        const std::size_t i = order[k];
        const double level = remaining / static_cast<double>(n - k);
        if (demands[i] <= level) {
            grants[i] = demands[i];
            remaining -= demands[i];
        } else {
            break;
        }
    }
    if (k < n) {
        const double level = remaining / static_cast<double>(n - k);
        for (; k < n; ++k) grants[order[k]] = level;
    }
    return grants;
}

double inflation_factor(double total_demand, double capacity, const ContentionModel& model) {
    if (capacity <= 0) return model.phi_max;
    const double U = total_demand / capacity;
    if (U <= model.U0) return 1.0;
    const double d = U - model.U0;
    return std::min(1.0 + model.alpha * d * d, model.phi_max);
}

QuantumPlan plan_quantum(const std::vector<CoreRequest>& requests, SimTime quantum_ns,
                         const ContentionModel& model) {
    const std::size_t n = requests.size();
    QuantumPlan plan;
    plan.serial_cap.assign(n, 0.0);

    const double capacity = model.lines_per_quantum(quantum_ns);
    double burst_total = 0.0;
    std::vector<double> bursts(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        bursts[i] = requests[i].burst_demand;
        burst_total += bursts[i];
    }
    plan.phi = inflation_factor(burst_total, capacity, model);

    // Serialized probes are served off the top at 1/(L0*phi) per ns.
    const double serial_rate_cap =
        static_cast<double>(quantum_ns) / (model.L0_ns * plan.phi);
    double serial_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        plan.serial_cap[i] = std::min(requests[i].serial_desired, serial_rate_cap);
        serial_total += plan.serial_cap[i];
    }
    if (serial_total > capacity && serial_total > 0) {
        const double scale = capacity / serial_total;
        for (double& s : plan.serial_cap) s *= scale;
        serial_total = capacity;
    }

    plan.burst_grant = allocate(bursts, capacity - serial_total);
    return plan;
}

}  // namespace bwsim
