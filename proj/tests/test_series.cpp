#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sqpack/common.hpp"
#include "sqpack/series.hpp"
#include "test_support.hpp"

using sqpack::partial_sum;
using sqpack::partial_sum_serial;
using sqpack::perimeter_budget;
using sqpack::SeriesValue;
using sqpack::tail_sum;

namespace {

// Independent high-precision oracle: extended-precision Kahan over powl.
long double ld_partial(double s, std::int64_t a, std::int64_t b) {
  long double sum = 0.0L, comp = 0.0L;
  for (std::int64_t n = a; n <= b; ++n) {
    const long double term = powl(static_cast<long double>(n), -(long double)s);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Brute-force oracle for s = 2 without pow: sum 1/(n*n).
double brute_inv_square(std::int64_t a, std::int64_t b) {
  sqpack::KahanAccumulator acc;
  for (std::int64_t n = a; n <= b; ++n) {
    const double nd = static_cast<double>(n);
    acc.add(1.0 / (nd * nd));
  }
  return acc.value();
}

// Brute-force oracle for s = 1.5 without pow: sum 1/(n*sqrt(n)), chunked and
// parallel but combined in fixed order.
double brute_inv_15(std::int64_t a, std::int64_t b) {
  const std::int64_t chunk = 1 << 22;
  const std::int64_t count = b - a + 1;
  const std::int64_t nchunks = (count + chunk - 1) / chunk;
  std::vector<double> part(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = a + c * chunk;
    const std::int64_t hi = std::min(b, lo + chunk - 1);
    sqpack::KahanAccumulator acc;
    for (std::int64_t n = lo; n <= hi; ++n) {
      const double nd = static_cast<double>(n);
      acc.add(1.0 / (nd * std::sqrt(nd)));
    }
    part[static_cast<std::size_t>(c)] = acc.value();
  }
  sqpack::KahanAccumulator acc;
  for (double p : part) acc.add(p);
  return acc.value();
}

}  // namespace

TEST_CASE("partial_sum: single term and tiny ranges") {
  CHECK(partial_sum(1.7, 5, 5) == sqpack::inv_pow(5, 1.7));
  CHECK(partial_sum(0.3, 1, 1) == 1.0);
  // 1 + 1/2 + 1/3 + 1/4 = 25/12
  const double got = partial_sum(1.0, 1, 4);
  CHECK(std::fabs(got - 25.0 / 12.0) <= 1e-13 * got);
}

TEST_CASE("partial_sum: empty range and domain errors") {
  CHECK(partial_sum(1.2, 5, 4) == 0.0);
  CHECK(partial_sum(1.2, 100, 1) == 0.0);
  CHECK_THROWS_AS(partial_sum(0.0, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(partial_sum(-1.0, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(partial_sum(1.2, 0, 10), std::invalid_argument);
}

TEST_CASE("partial_sum: matches extended-precision oracle to 13 digits") {
  const double got = partial_sum(1.2, 1, 1'000'000);
  const double want = static_cast<double>(ld_partial(1.2, 1, 1'000'000));
  CHECK(std::fabs(got - want) <= 1e-13 * want);
  // the t + delta*t exponents the budget uses sit below 1
  const double got2 = partial_sum(0.9375, 1, 200'000);
  const double want2 = static_cast<double>(ld_partial(0.9375, 1, 200'000));
  CHECK(std::fabs(got2 - want2) <= 1e-13 * want2);
}

TEST_CASE("partial_sum: serial and parallel agree; thread count is irrelevant") {
  const double serial = partial_sum_serial(1.5, 1, 3'000'000);
  const double par = partial_sum(1.5, 1, 3'000'000);
  CHECK(std::fabs(par - serial) <= 1e-13 * serial);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = partial_sum(1.5, 1, 3'000'000);
  omp_set_num_threads(saved);
  const double many = partial_sum(1.5, 1, 3'000'000);
  CHECK(one == many);  // bit-identical: fixed chunking
#endif
}

TEST_CASE("partial_sum: additive over range concatenation") {
  sqtest::Rng rng(42);
  for (int k = 0; k < 40; ++k) {
    const double s = rng.uniform(0.2, 3.0);
    const std::int64_t a = rng.uniform_int(1, 5000);
    const std::int64_t b = a + rng.uniform_int(0, 20000);
    const std::int64_t c = b + 1 + rng.uniform_int(0, 20000);
    const double whole = partial_sum(s, a, c);
    const double split = partial_sum(s, a, b) + partial_sum(s, b + 1, c);
    CHECK(std::fabs(whole - split) <= 1e-13 * whole);
  }
}

TEST_CASE("tail_sum: Basel values") {
  const double basel = std::numbers::pi * std::numbers::pi / 6.0;

  const SeriesValue t2 = tail_sum(2.0, 2);
  CHECK(t2.error_bound <= 1e-14 * t2.value);
  CHECK(std::fabs(t2.value - (basel - 1.0)) <= t2.error_bound + 4.0 * sqpack::kEps);

  const SeriesValue t1 = tail_sum(2.0, 1);
  CHECK(t1.error_bound <= 1e-14 * t1.value);
  CHECK(std::fabs(t1.value - basel) <= t1.error_bound + 4.0 * sqpack::kEps);

  // brute-force cross-check: 1e8 direct terms + integral sandwich
  //   int_N^inf x^-2 dx = 1/N  <=  tail  <=  N^-2 + 1/N
  const std::int64_t N = 100'000'001;
  const double brute = brute_inv_square(1, N - 1);
  const double lo = brute + 1.0 / static_cast<double>(N);
  const double hi = lo + 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  CHECK(t1.value >= lo - t1.error_bound - 1e-12 * t1.value);
  CHECK(t1.value <= hi + t1.error_bound + 1e-12 * t1.value);
}

TEST_CASE("tail_sum: s=1.5 at n0=1e6 vs brute force to 1e9 plus sandwich") {
  const SeriesValue got = tail_sum(1.5, 1'000'000);
  CHECK(got.error_bound <= 1e-14 * got.value);
  const std::int64_t N = 1'000'000'001;
  const double Nd = static_cast<double>(N);
  const double brute = brute_inv_15(1'000'000, N - 1);
  const double integral = 2.0 / std::sqrt(Nd);  // int_N^inf x^-1.5 dx
  const double lo = brute + integral;
  const double hi = lo + 1.0 / (Nd * std::sqrt(Nd));
  // brute rounding allowance: 1e9 compensated terms stay well under 1e-12 rel
  const double slop = got.error_bound + 1e-12 * got.value;
  CHECK(got.value >= lo - slop);
  CHECK(got.value <= hi + slop);
}

TEST_CASE("tail_sum: recurrence tail(s,n0) = tail(s,n0+1) + n0^-s over a grid") {
  const double ss[] = {1.2, 1.5, 1.8, 2.0, 3.0};
  const std::int64_t n0s[] = {1, 2, 7, 100, 12345, 1'000'000};
  for (double s : ss) {
    for (std::int64_t n0 : n0s) {
      const SeriesValue a = tail_sum(s, n0);
      const SeriesValue b = tail_sum(s, n0 + 1);
      const double term = sqpack::inv_pow(n0, s);
      const double gap = std::fabs(a.value - b.value - term);
      CHECK(gap <= a.error_bound + b.error_bound + 4.0 * sqpack::kEps * a.value);
    }
  }
}

TEST_CASE("tail_sum: certified bounds are honest against the s=2 closed form") {
  const long double basel_ld = 1.644934066848226436472415166646025189219L;
  for (std::int64_t n0 : {1, 2, 3, 10, 57, 400, 9999}) {
    const SeriesValue v = tail_sum(2.0, n0);
    const long double closed = basel_ld - ld_partial(2.0, 1, n0 - 1);
    CHECK(std::fabs(v.value - static_cast<double>(closed)) <=
          v.error_bound + 4.0 * sqpack::kEps * v.value);
  }
}

TEST_CASE("tail_sum: divergent inputs rejected") {
  CHECK_THROWS_AS(tail_sum(1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(tail_sum(0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(tail_sum(2.0, 0), std::invalid_argument);
}

TEST_CASE("perimeter_budget: M=1, n0=2 collapses to a single unit term") {
  // 1^{-1+d/2} * 1^{-(t+dt)} = 1 regardless of t
  CHECK(perimeter_budget(0.75, 1, 2) == 1.0);
}

TEST_CASE("perimeter_budget: matches its definition and grows with n0") {
  const double t = 0.75;
  const double delta = 1.0 - t;
  const double want = std::pow(16.0, -1.0 + 0.5 * delta) *
                      partial_sum(t + delta * t, 1, 999'999);
  const double got = perimeter_budget(t, 16, 1'000'000);
  CHECK(got == doctest::Approx(want).epsilon(1e-12));

  double prev = 0.0;
  for (std::int64_t n0 : {2, 10, 100, 1000, 10000}) {
    const double b = perimeter_budget(t, 16, n0);
    CHECK(b >= prev);
    prev = b;
  }
}
