#include "cfdyn/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfdyn {

std::int64_t Rng::uniform_int(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("Rng::uniform_int: n must be >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return static_cast<std::int64_t>(x % un);
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite; u2 in [0, 1).
  const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace cfdyn
