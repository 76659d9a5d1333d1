#pragma once

#include <cstdint>
#include <random>

namespace cfdyn {

/// Deterministic random stream with a fixed generation algorithm.
///
/// All variates are derived from std::mt19937_64 raw output, so a given seed
/// produces the same sequence on every platform and standard library:
///   - uniform doubles take the top 53 bits of one engine draw,
///   - integers use rejection sampling on the raw 64-bit output,
///   - gaussians use the Box-Muller transform (pairs cached).
/// std::*_distribution adapters are intentionally avoided; their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n). Requires n >= 1.
  std::int64_t uniform_int(std::int64_t n);

  /// Standard normal variate (Box-Muller).
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cfdyn
