#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sqpack {

/// Compensated (Kahan) accumulator. Signed updates are fine; read via value().
struct KahanAccumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  void reset() { sum = 0.0; comp = 0.0; }
  double value() const { return sum; }
};

/// n^{-s}. One shared routine so equal (n, s) give bit-identical values in the
/// packer, the series code and the verifier.
inline double inv_pow(std::int64_t n, double s) {
  return std::pow(static_cast<double>(n), -s);
}

/// floor with a small upward nudge: a value that lands a hair below an integer
/// because of accumulated rounding at a construction-time boundary is treated
/// as that integer. Legitimate fractional parts sit far from integers.
inline std::int64_t nudged_floor(double q, double nudge) {
  return static_cast<std::int64_t>(std::floor(q + nudge));
}

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace sqpack
