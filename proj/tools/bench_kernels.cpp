// Benchmark: OpenMP kernels against their serial references.
//
//   partial_sum      chunked parallel reduction vs plain Kahan loop
//   disjointness     sweep-line vs O(N^2) brute force (the brute force is
//                    the parallel kernel here)
//
// Usage: bench_kernels [terms] [rects]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sqpack/block.hpp"
#include "sqpack/series.hpp"
#include "sqpack/verify.hpp"

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<sqpack::Rect> make_corpus(std::int64_t target) {
  // Tile a synthetic region with packed blocks; realistic sliver-heavy input.
  using namespace sqpack;
  std::vector<Rect> items;
  const Params p = Params::make(0.75, 8, 1'000'000);
  std::int64_t n = p.n0;
  const double s = inv_pow(p.n0, p.t);
  double oy = 0.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(8.0, 23.5);
  while (static_cast<std::int64_t>(items.size()) < target) {
    const double w = u(rng) * s;
    const double h = u(rng) * s;
    const Rect rect{0.0, oy, std::min(w, h), oy + std::max(w, h)};
    Violation why;
    auto res = pack_block(rect, n, p, &why);
    if (!res) break;
    for (const PlacedSquare& q : res->squares) items.push_back(q.footprint());
    for (const TaggedRect& g : res->gaps) items.push_back(g.rect);
    n = res->n0_next;
    oy = rect.y_hi;
  }
  return items;
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t terms = argc > 1 ? std::atoll(argv[1]) : 50'000'000;
  const std::int64_t rects = argc > 2 ? std::atoll(argv[2]) : 20'000;

#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  {
    const double s = 1.5;
    double t0 = now_ms();
    const double serial = sqpack::partial_sum_serial(s, 1, terms);
    const double t1 = now_ms();
    const double parallel = sqpack::partial_sum(s, 1, terms);
    const double t2 = now_ms();
    std::printf("partial_sum s=%.2f over %lld terms\n", s,
                static_cast<long long>(terms));
    std::printf("  serial   %9.1f ms  -> %.17g\n", t1 - t0, serial);
    std::printf("  parallel %9.1f ms  -> %.17g  (speedup %.2fx, rel diff %.2e)\n",
                t2 - t1, parallel, (t1 - t0) / std::max(1e-9, t2 - t1),
                std::abs(parallel - serial) / serial);
  }

  {
    const std::vector<sqpack::Rect> items = make_corpus(rects);
    const double slack = 1e-12 * 1e-4;
    double t0 = now_ms();
    const auto sweep = sqpack::check_disjoint(items, slack);
    const double t1 = now_ms();
    const auto brute = sqpack::check_disjoint_bruteforce(items, slack);
    const double t2 = now_ms();
    std::printf("disjointness over %zu rects\n", items.size());
    std::printf("  sweep-line  %9.1f ms  -> %s (%zu violations)\n", t1 - t0,
                sweep.pass ? "pass" : "fail", sweep.violations.size());
    std::printf("  bruteforce  %9.1f ms  -> %s (%zu violations)\n", t2 - t1,
                brute.pass ? "pass" : "fail", brute.violations.size());
  }
  return 0;
}
