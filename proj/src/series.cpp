#include "sqpack/series.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sqpack/common.hpp"

namespace sqpack {

namespace {

// Fixed chunk length for the deterministic parallel reduction. Chunk
// boundaries depend only on (a, b), never on the thread count.
constexpr std::int64_t kChunk = std::int64_t{1} << 21;

// Direct-summation budget for tail_sum before switching to the
// Euler-Maclaurin remainder: K = max(1e5, min(100*n0, 1e8)).
constexpr std::int64_t kTailDirectCap = 100'000'000;

void require_partial_domain(double s, std::int64_t a) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "partial_sum: require s > 0 (got " << s << ")";
    throw std::invalid_argument(os.str());
  }
  if (a < 1) {
    std::ostringstream os;
    os << "partial_sum: require a >= 1 (got " << a << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double partial_sum_serial(double s, std::int64_t a, std::int64_t b) {
  require_partial_domain(s, a);
  if (a > b) return 0.0;
  KahanAccumulator acc;
  for (std::int64_t n = a; n <= b; ++n) acc.add(inv_pow(n, s));
  return acc.value();
}

double partial_sum(double s, std::int64_t a, std::int64_t b) {
  require_partial_domain(s, a);
  if (a > b) return 0.0;
  const std::int64_t count = b - a + 1;
  if (count <= kChunk) return partial_sum_serial(s, a, b);

  const std::int64_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<double> part(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = a + c * kChunk;
    const std::int64_t hi = std::min(b, lo + kChunk - 1);
    part[static_cast<std::size_t>(c)] = partial_sum_serial(s, lo, hi);
  }
  KahanAccumulator acc;
  for (double p : part) acc.add(p);
  return acc.value();
}

SeriesValue tail_sum(double s, std::int64_t n0) {
  if (!(s > 1.0)) {
    std::ostringstream os;
    os << "tail_sum: require s > 1, series diverges (got " << s << ")";
    throw std::invalid_argument(os.str());
  }
  if (n0 < 1) {
    std::ostringstream os;
    os << "tail_sum: require n0 >= 1 (got " << n0 << ")";
    throw std::invalid_argument(os.str());
  }

  const std::int64_t K = n0 >= kTailDirectCap / 100
                             ? kTailDirectCap
                             : std::max<std::int64_t>(100'000, 100 * n0);
  const std::int64_t N = n0 + K;  // first index handled by the expansion
  const double direct = partial_sum(s, n0, N - 1);

  // Euler-Maclaurin at N:
  //   sum_{n=N}^inf n^-s = N^{1-s}/(s-1) + N^-s/2 + s N^{-s-1}/12
  //                        - s(s+1)(s+2) N^{-s-3}/720 + R,
  //   |R| <= s(s+1)(s+2)(s+3)(s+4) N^{-s-5}/30240.
  const double Nd = static_cast<double>(N);
  const double Ns = inv_pow(N, s);
  const double tail = Ns * Nd / (s - 1.0) + 0.5 * Ns + s * Ns / (12.0 * Nd) -
                      s * (s + 1.0) * (s + 2.0) * Ns / (720.0 * Nd * Nd * Nd);
  const double em_bound = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * Ns /
                          (30240.0 * Nd * Nd * Nd * Nd * Nd);

  SeriesValue out;
  out.value = direct + tail;
  // Truncation bound plus a rounding allowance for the compensated sum and
  // the closed-form tail evaluation.
  out.error_bound = em_bound + 8.0 * kEps * out.value;
  assert(out.error_bound <= 1e-14 * out.value);
  return out;
}

double perimeter_budget(double t, std::int64_t M, std::int64_t n0) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("perimeter_budget: require 0 < t < 1");
  if (M < 1) throw std::invalid_argument("perimeter_budget: require M >= 1");
  if (n0 < 2) throw std::invalid_argument("perimeter_budget: require n0 >= 2");
  const double delta = 1.0 - t;
  const double scale = std::pow(static_cast<double>(M), -1.0 + 0.5 * delta);
  return scale * partial_sum(t + delta * t, 1, n0 - 1);
}

double perimeter_budget(const Params& p, std::int64_t n0) {
  return perimeter_budget(p.t, p.M, n0);
}

}  // namespace sqpack
