#pragma once

#include <functional>

#include "tirls/tensor.hpp"

namespace tirls {

/// Worker count for slice-parallel kernels. Read once from TIRLS_NUM_THREADS
/// (default 1); set_thread_count overrides it for the process.
int thread_count();
void set_thread_count(int n);

/// Runs body(j) for j in [0, count). Each j must write only its own outputs, so
/// results do not depend on the schedule.
void parallel_for(Index count, const std::function<void(Index)>& body);

}  // namespace tirls
