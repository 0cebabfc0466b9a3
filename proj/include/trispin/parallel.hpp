#pragma once

#include <cstddef>
#include <functional>

namespace trispin {

/// Environment variable holding the worker thread count (integer >= 1).
inline constexpr const char* kThreadsEnvVar = "TRISPIN_THREADS";

/// Worker count from TRISPIN_THREADS, or 1 when unset.
/// Throws ValidationError when the variable is set to anything but an integer >= 1.
std::size_t thread_count();

/// Calls body(k) for k in [0, n), split into contiguous chunks over thread_count() threads.
/// The first exception thrown by any chunk is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace trispin
