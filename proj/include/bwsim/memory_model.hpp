#pragma once

#include <vector>

#include "bwsim/types.hpp"

namespace bwsim {

// Shared-memory contention model: peak service rate plus the
// exponential-then-saturate latency inflation curve seen by serialized
// accesses.
struct ContentionModel {
    double peak_Bps = 2.4e9;
    double L0_ns = 80.0;   // base serialized line-fetch latency
    double U0 = 0.3;       // inflation knee (utilization fraction)
    double alpha = 6.0;    // inflation curvature
    double phi_max = 3.0;  // saturation cap

    void validate() const {
        if (peak_Bps <= 0) throw std::invalid_argument("peak_Bps must be positive");
        if (L0_ns <= 0) throw std::invalid_argument("L0 must be positive");
        if (U0 < 0 || U0 >= 1) throw std::invalid_argument("U0 must be in [0,1)");
        if (phi_max < 1) throw std::invalid_argument("phi_max must be >= 1");
        if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
    }

    double lines_per_quantum(SimTime quantum_ns) const {
        return peak_Bps * static_cast<double>(quantum_ns) / 1e9 / kLineBytes;
    }
};

// Max-min fair (water-filling) allocation of `capacity` lines among the
// given demands. Unsaturated demanders are fully served.
std::vector<double> allocate(const std::vector<double>& demands, double capacity);

// phi = 1 for U <= U0; min(1 + alpha*(U-U0)^2, phi_max) above the knee.
double inflation_factor(double total_demand, double capacity, const ContentionModel& model);

// One core's memory request for a quantum. Exactly one of burst_demand /
// serial_desired is nonzero (a core runs one instruction at a time).
struct CoreRequest {
    double burst_demand = 0.0;    // paced MemBurst lines, already budget-clipped
    double serial_desired = 0.0;  // SerialMem accesses, already budget-clipped
};

struct QuantumPlan {
    std::vector<double> burst_grant;  // lines granted to MemBurst demand
    std::vector<double> serial_cap;   // max serialized accesses servable
    double phi = 1.0;
};

// Per-quantum plan: serialized probes are served off the top at rate
// quantum/(L0*phi); the remaining capacity is divided max-min fair among the
// burst demands. phi is computed from the burst demand only.
QuantumPlan plan_quantum(const std::vector<CoreRequest>& requests, SimTime quantum_ns,
                         const ContentionModel& model);

}  // namespace bwsim
