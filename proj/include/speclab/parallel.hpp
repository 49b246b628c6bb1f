#pragma once

#include <cstdint>
#include <vector>

namespace speclab::par {

// Global switch for the OpenMP code paths. Sweeps must produce output
// identical to the serial order, so flipping this only changes timing.
bool enabled();
void set_enabled(bool on);
int thread_count();

// Deterministic parallel map: out[i] = f(i). Results land by index, so the
// output does not depend on the schedule.
template <class T, class F>
std::vector<T> map_n(std::int64_t n, F&& f) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (enabled()) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
  }
  return out;
}

}  // namespace speclab::par
