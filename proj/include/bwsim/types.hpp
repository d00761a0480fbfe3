#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bwsim {

// Simulation time in nanoseconds since run start.
using SimTime = std::int64_t;

inline constexpr int kLineBytes = 64;

struct EngineConfig {
    SimTime quantum_ns = 10'000;
    int core_count = 4;
    double freq_cycles_per_ns = 2.8;
    SimTime timeslice_ns = 1'000'000;
    SimTime syscall_cost_ns = 125;
    SimTime handler_cost_ns = 7'000;  // period-interrupt handler cost per core

    void validate(SimTime regulator_period_ns) const {
        if (quantum_ns <= 0) throw std::invalid_argument("quantum must be positive");
        if (core_count <= 0) throw std::invalid_argument("core_count must be positive");
        if (freq_cycles_per_ns <= 0) throw std::invalid_argument("core frequency must be positive");
        if (regulator_period_ns % quantum_ns != 0)
            throw std::invalid_argument("quantum must divide the regulator period exactly");
        if (timeslice_ns % quantum_ns != 0)
            throw std::invalid_argument("timeslice must be a multiple of the quantum");
        if (syscall_cost_ns < 0 || handler_cost_ns < 0)
            throw std::invalid_argument("overhead costs must be non-negative");
    }
};

// Thrown on scenario validation failures (CLI exit code 2).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bwsim
