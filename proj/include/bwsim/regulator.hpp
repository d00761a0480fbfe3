#pragma once

#include <cstdint>
#include <string>

#include "bwsim/types.hpp"

namespace bwsim {

enum class RegMode { Unregulated, BwLock, MemGuard };

std::string to_string(RegMode mode);
RegMode reg_mode_from_string(const std::string& s);

struct RegulatorConfig {
    SimTime period_ns = 1'000'000;
    double minperf_MBps = 100.0;
    RegMode mode = RegMode::Unregulated;

    void validate() const {
        if (period_ns <= 0) throw std::invalid_argument("period must be positive");
        if (minperf_MBps <= 0) throw std::invalid_argument("minperf must be positive");
    }
};

// floor(MBps * 1e6 * period_seconds / 64)
std::int64_t lines_per_period(double MBps, SimTime period_ns);

}  // namespace bwsim
