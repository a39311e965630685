#pragma once

// Deterministic data-parallel map: workers fill disjoint index ranges of a
// pre-sized result vector, reductions then run sequentially in index order,
// so results are independent of the worker count. KSTAB_THREADS caps the
// pool (default: hardware concurrency).

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace kstab {

inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("KSTAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v < 1024) hw = static_cast<unsigned>(v);
  }
  return hw;
}

// fn(i) is called exactly once for every i in [0, n); any writes must go to
// index i of caller-owned storage.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n < 256) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace kstab
