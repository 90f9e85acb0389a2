#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace restopo {

/// Deterministic random source used by the simulator.
///
/// std::mt19937_64 has a fully specified output sequence, so fields are
/// reproducible across platforms for a given seed. The distribution
/// transforms are written out here (instead of using std::normal_distribution
/// etc.) because the standard leaves those algorithms implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in (0, 1]. Open at zero so logs stay finite.
  double next_open_unit() {
    // 53 high bits -> uniform on {1, ..., 2^53} / 2^53.
    return double((engine_() >> 11) + 1) * 0x1p-53;
  }

  /// Standard normal via the Box-Muller transform. Consumes exactly two
  /// engine draws per call, which keeps the draw schedule independent of the
  /// values produced.
  double next_normal() {
    const double u1 = next_open_unit();
    const double u2 = next_open_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
  /// result exactly uniform and portable.
  uint64_t next_below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle with the rejection sampler above; the permutation for
/// a given seed is the same on every platform.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = size_t(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace restopo
