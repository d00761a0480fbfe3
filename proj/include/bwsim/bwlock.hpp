#pragma once

#include "bwsim/types.hpp"

namespace bwsim {

inline constexpr int kLockSelf = -1;

// syscall_bwlock(pid, val): target SELF resolves to the issuing task.
struct LockCommand {
    int target = kLockSelf;
    int val = 0;
};

}  // namespace bwsim
