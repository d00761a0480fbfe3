#include "bwsim/regulator.hpp"

#include <cmath>

namespace bwsim {

std::string to_string(RegMode mode) {
    switch (mode) {
        case RegMode::Unregulated: return "unregulated";
        case RegMode::BwLock: return "bwlock";
        case RegMode::MemGuard: return "memguard";
    }
    return "?";
}

RegMode reg_mode_from_string(const std::string& s) {
    if (s == "unregulated") return RegMode::Unregulated;
    if (s == "bwlock") return RegMode::BwLock;
    if (s == "memguard") return RegMode::MemGuard;
    throw ValidationError("unknown regulator mode: " + s);
}

std::int64_t lines_per_period(double MBps, SimTime period_ns) {
    if (MBps < 0) throw std::invalid_argument("lines_per_period: MBps must be >= 0");
    return static_cast<std::int64_t>(
        std::floor(MBps * 1e6 * (static_cast<double>(period_ns) / 1e9) / kLineBytes));
}

}  // namespace bwsim
