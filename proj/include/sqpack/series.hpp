#pragma once

#include <cstdint>

#include "sqpack/params.hpp"

namespace sqpack {

/// sum_{n=a}^{b} n^{-s}, compensated summation. Empty range (a > b) is 0.
/// Splits the range into fixed-size chunks combined in index order, so the
/// result is bit-identical for any OpenMP thread count.
double partial_sum(double s, std::int64_t a, std::int64_t b);

/// Serial reference implementation (plain Kahan loop), kept for tests and for
/// the benchmark target.
double partial_sum_serial(double s, std::int64_t a, std::int64_t b);

/// sum_{n=n0}^{inf} n^{-s} with a certified error bound (<= 1e-14 * value).
/// Direct summation of the leading terms plus an Euler-Maclaurin tail through
/// the B4 term; the first omitted (B6) term bounds the truncation error
/// rigorously because every even derivative of x^{-s} is positive.
SeriesValue tail_sum(double s, std::int64_t n0);

/// M^{-1+delta/2} * sum_{n=1}^{n0-1} n^{-(t + delta*t)}, the right-hand side
/// of the weighted-perimeter induction invariant. delta = 1 - t.
double perimeter_budget(double t, std::int64_t M, std::int64_t n0);
double perimeter_budget(const Params& p, std::int64_t n0);

}  // namespace sqpack
