#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqpack/geometry.hpp"
#include "sqpack/params.hpp"

namespace sqpack {

/// Serialized packing state, producer-independent. The verifier recomputes
/// everything it checks from (n, t) and raw coordinates.
struct PackingCertificate {
  Params params;
  std::string status = "ok";  // "ok" | "terminated-with-error"
  Rect outer;
  std::vector<PlacedSquare> squares;
  std::vector<TaggedRect> residuals;
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;  // squares carry indices n_lo <= n < n_hi
  double discarded_area = 0.0;
};

struct OverlapPair {
  std::int32_t a = 0;
  std::int32_t b = 0;  // a < b, indices into the checked span
  double area = 0.0;
};

struct DisjointReport {
  bool pass = true;
  bool truncated = false;
  std::vector<OverlapPair> violations;  // first entry = first found
};

/// Detects pairs of open rectangles whose intersection exceeds `slack` in
/// both axes. Sweep-line over x with an interval-stabbing structure over y;
/// O(N log N + K) for K reported violations.
DisjointReport check_disjoint(std::span<const Rect> items, double slack,
                              std::size_t cap = 1024);

/// O(N^2) reference with the identical pair predicate, parallelized with
/// OpenMP. Kept as the oracle for the sweep and for the benchmark target.
DisjointReport check_disjoint_bruteforce(std::span<const Rect> items, double slack,
                                         std::size_t cap = 1024);

struct ContainReport {
  bool pass = true;
  double worst_margin = 0.0;
  std::int32_t worst_index = -1;
};

/// Every item inside outer, margins >= -slack.
ContainReport check_containment(std::span<const Rect> items, const Rect& outer,
                                double slack);

struct AccountingReport {
  bool tiling_pass = true;
  double tiling_rel_gap = 0.0;        // squares + residuals (+discarded) vs outer
  bool tail_applicable = false;       // outer area matches tail_sum(2t, n_lo)
  bool tail_pass = true;
  double residual_vs_tail_rel = 0.0;  // residual area vs tail_sum(2t, n_hi)
  double budget_ratio = 0.0;             // perim_delta(residuals) / budget(n_hi)
  bool height_pass = true;
  double sup_height = 0.0;
  double height_bound = 0.0;
  bool contiguity_pass = true;
  std::string contiguity_detail;
  bool sides_pass = true;
  double worst_side_rel = 0.0;
  std::int64_t worst_side_n = 0;
  bool discarded_pass = true;

  bool pass() const {
    return tiling_pass && (!tail_applicable || tail_pass) && height_pass &&
           contiguity_pass && sides_pass && discarded_pass;
  }
};

/// The packing's accounting identities: tiling area identity, residual area
/// vs the zeta tail, weighted perimeter vs budget, height bound, index
/// contiguity, side consistency, discarded-area ledger.
AccountingReport check_accounting(const PackingCertificate& cert);

enum class VerifyLevel { fast, full_bruteforce };

struct VerificationReport {
  DisjointReport disjoint;
  ContainReport contain;
  AccountingReport accounting;
  bool oracle_agrees = true;  // full_bruteforce only: sweep vs brute set-equal

  bool pass() const {
    return disjoint.pass && contain.pass && accounting.pass() && oracle_agrees;
  }
};

/// Full independent check of a certificate. Disjointness and containment run
/// over all square footprints followed by all residuals, with slack
/// 1e-12 * (outer scale).
VerificationReport verify_certificate(const PackingCertificate& cert,
                                      VerifyLevel level = VerifyLevel::fast);

}  // namespace sqpack
