#pragma once

#include <atomic>
#include <cstddef>
#include <functional>

namespace critflow {

// Global worker count for ensemble-style loops.  Per-item work must be
// deterministic in the item index; aggregation stays order-independent.
void set_threads(unsigned n);
unsigned configured_threads();

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace critflow
