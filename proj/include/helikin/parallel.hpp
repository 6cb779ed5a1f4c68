#pragma once

#include <cstddef>
#include <functional>

namespace helikin {

/// Worker count: HELIKIN_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int worker_count();

/// Calls body(i) for i in [0, n), spreading indices over worker_count()
/// threads. body must not touch shared mutable state except disjoint slots.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace helikin
