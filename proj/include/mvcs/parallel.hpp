#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>

namespace mvcs {

// Worker cap from MVCS_THREADS, else hardware concurrency (at least 1).
std::size_t max_threads();

// Runs body(i) for i in [0, n). Each index must write only its own output
// slot so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mvcs
