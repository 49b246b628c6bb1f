#include "speclab/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace speclab::par {

namespace {
std::atomic<int> g_enabled{-1};  // -1: not yet decided

bool decide_default() {
#ifdef _OPENMP
  if (const char* env = std::getenv("SPECLAB_SERIAL"); env && env[0] == '1') return false;
  return true;
#else
  return false;
#endif
}
}  // namespace

bool enabled() {
  int v = g_enabled.load(std::memory_order_relaxed);
  if (v < 0) {
    v = decide_default() ? 1 : 0;
    g_enabled.store(v, std::memory_order_relaxed);
  }
  return v == 1;
}

void set_enabled(bool on) { g_enabled.store(on ? 1 : 0, std::memory_order_relaxed); }

int thread_count() {
#ifdef _OPENMP
  return enabled() ? omp_get_max_threads() : 1;
#else
  return 1;
#endif
}

}  // namespace speclab::par
