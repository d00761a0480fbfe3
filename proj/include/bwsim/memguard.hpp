#pragma once

#include <vector>

#include "bwsim/types.hpp"

namespace bwsim {

// Simplified MemGuard reconstruction: static per-core reservations with an
// EWMA usage predictor and a shared reclaim pool of donated lines.
struct MemGuardConfig {
    std::vector<double> reserve_MBps;  // per-core; sized to core_count at validation
    bool reclaim = true;
    double ewma_alpha = 0.5;

    void validate(int core_count, double guaranteed_MBps) const {
        if (static_cast<int>(reserve_MBps.size()) != core_count)
            throw std::invalid_argument("memguard reservations must cover every core");
        double total = 0;
        for (double r : reserve_MBps) {
            if (r < 0) throw std::invalid_argument("reservation must be non-negative");
            total += r;
        }
        if (total > guaranteed_MBps)
            throw std::invalid_argument("sum of reservations exceeds guaranteed bandwidth");
        if (ewma_alpha <= 0 || ewma_alpha > 1)
            throw std::invalid_argument("ewma_alpha must be in (0,1]");
    }
};

// prediction' = alpha * usage + (1 - alpha) * prediction
double ewma_predict(double prediction, double usage, double alpha);

// Per-core budget bookkeeping for one MemGuard period. A core consumes its
// assignment first, then tops up from its own donated reserve, then draws
// from the shared pool (contention resolved in core-id order).
struct MemGuardState {
    std::vector<double> prediction;    // EWMA of per-period consumed lines
    std::vector<double> reserve_lines; // per-core reservation in lines/period
    std::vector<double> assigned;      // this period's assignment
    std::vector<double> own_spare;     // donated part of the core's own reserve
    double pool = 0.0;                 // shared donated lines this period

    void init(int core_count);
    // Boundary: update predictions with last period's usage, assign
    // min(prediction, reserve), donate the remainder.
    void on_period_boundary(const std::vector<double>& last_usage, const MemGuardConfig& cfg);
    // Lines available to `core` right now (assignment + own spare + pool).
    double available(int core) const;
    // Consume `lines` for `core`, draining assignment, then own spare, then pool.
    void consume(int core, double lines);
};

}  // namespace bwsim
