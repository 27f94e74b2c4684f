#pragma once

#include <cstdint>
#include <optional>

namespace sqpack {

/// Global run configuration. delta is always derived from t, never stored.
struct Params {
  double t = 0.75;
  std::int64_t M = 8;
  std::int64_t n0 = 2;
  std::optional<std::int64_t> n_max;

  double delta() const { return 1.0 - t; }

  /// Throws std::invalid_argument naming the violated bound.
  void validate() const;

  static Params make(double t, std::int64_t M, std::int64_t n0,
                     std::optional<std::int64_t> n_max = std::nullopt);
};

/// A series value with a certified absolute error bound:
///   value - error_bound <= true sum <= value + error_bound.
struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
};

}  // namespace sqpack
