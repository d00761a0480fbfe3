#include "bwsim/memguard.hpp"

#include <algorithm>

namespace bwsim {

double ewma_predict(double prediction, double usage, double alpha) {
    return alpha * usage + (1.0 - alpha) * prediction;
}

void MemGuardState::init(int core_count) {
    prediction.assign(core_count, 0.0);
    reserve_lines.assign(core_count, 0.0);
    assigned.assign(core_count, 0.0);
    own_spare.assign(core_count, 0.0);
    pool = 0.0;
}

void MemGuardState::on_period_boundary(const std::vector<double>& last_usage,
                                       const MemGuardConfig& cfg) {
    pool = 0.0;
    for (std::size_t i = 0; i < prediction.size(); ++i) {
        prediction[i] = ewma_predict(prediction[i], last_usage[i], cfg.ewma_alpha);
        if (cfg.reclaim) {
            assigned[i] = std::min(prediction[i], reserve_lines[i]);
            own_spare[i] = reserve_lines[i] - assigned[i];
            pool += own_spare[i];
        } else {
            assigned[i] = reserve_lines[i];
            own_spare[i] = 0.0;
        }
    }
}

double MemGuardState::available(int core) const {
    // the core's donated spare sits inside the pool
    return assigned[core] + pool;
}

void MemGuardState::consume(int core, double lines) {
    double take = std::min(lines, assigned[core]);
    assigned[core] -= take;
    lines -= take;
    if (lines <= 0) return;
    // Reclaim the core's own donation first (up to its full reserve), then
    // draw from the shared remainder. Draw order across cores is the
    // engine's core-id iteration order.
    take = std::min({lines, own_spare[core], pool});
    own_spare[core] -= take;
    pool -= take;
    lines -= take;
    if (lines <= 0) return;
    take = std::min(lines, pool);
    pool -= take;
    // Donors' outstanding claims cannot exceed what is left.
    for (double& s : own_spare) s = std::min(s, pool);
}

}  // namespace bwsim
