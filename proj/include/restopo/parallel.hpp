#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "restopo/errors.hpp"

namespace restopo {

/// Worker count: RESERVOIR_TOPO_THREADS if set (>= 1), else the hardware
/// concurrency. Results never depend on this value, only wall time does.
inline int thread_count() {
  if (const char* env = std::getenv("RESERVOIR_TOPO_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw config_error("RESERVOIR_TOPO_THREADS must be a positive integer, got '" +
                       std::string(env) + "'");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

/// Runs fn(begin, end) over disjoint chunks of [0, n), possibly from several
/// threads. fn must not throw; chunk boundaries are deterministic but the
/// execution order is not, so fn must only write to per-index slots.
template <typename Fn>
void parallel_for(int64_t n, Fn&& fn, int threads = 0) {
  if (n <= 0) return;
  if (threads <= 0) threads = thread_count();
  const int workers = int(std::min<int64_t>(threads, n));
  if (workers <= 1) {
    fn(int64_t{0}, n);
    return;
  }
  const int64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(size_t(workers));
  for (int w = 0; w < workers; ++w) {
    const int64_t begin = int64_t(w) * chunk;
    const int64_t end = std::min<int64_t>(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace restopo
