#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqpack/geometry.hpp"
#include "sqpack/params.hpp"

namespace sqpack {

/// A failed inequality with both sides, for structured error reports. This is
/// the payload of the algorithm's "terminate with error" branch.
struct Violation {
  std::string check;  // e.g. "eccentricity.lower: M*n0^-t <= w(R)"
  double lhs = 0.0;
  double rhs = 0.0;
  std::int64_t n = 0;
  std::string to_message() const;
};

/// Block target. The rectangle's x extent is treated as w(R) and its y extent
/// as h(R) exactly as written; pack_block handles transposition before
/// building one of these. Carries t rather than a full Params so degenerate
/// configurations (equal sides) remain constructible in tests.
struct BlockSpec {
  Rect rect;
  std::int64_t n0 = 0;
  double t = 0.0;
  std::int64_t M1 = 0;
  std::int64_t M2 = 0;
};

struct BlockResult {
  std::vector<PlacedSquare> squares;  // lex order: n = n0 + j*M1 + i
  std::vector<TaggedRect> gaps;
  std::int64_t n0_next = 0;  // n0 + M1*M2
  std::int64_t M1 = 0;
  std::int64_t M2 = 0;
  bool swapped = false;  // construction ran with the axes exchanged
  double discarded_area = 0.0;
  double gap_perim = 0.0;     // unweighted, reported against the M n0^-t bound
  double square_perim = 0.0;  // unweighted
};

/// n_{i,j} = n0 + j*M1 + i; bijection from the index grid onto
/// {n0, ..., n0 + M1*M2 - 1}. Throws std::out_of_range off the grid.
std::int64_t lex_index(std::int64_t i, std::int64_t j, std::int64_t n0, std::int64_t M1,
                       std::int64_t M2);

struct M1M2 {
  std::int64_t M1 = 0;
  std::int64_t M2 = 0;
};

/// M1 = floor(w(rect) * n0^t), M2 = floor(h(rect) * n0^t), after checking the
/// eccentricity bounds M n0^-t <= w <= h <= 3M n0^-t. Exact boundary hits
/// clamp inward rather than reject. On failure writes the violated inequality
/// to *why and returns nullopt.
std::optional<M1M2> choose_M1_M2(const Rect& rect, std::int64_t n0, const Params& p,
                                 Violation* why);

/// Near-lattice placement: the anchor of each row is set from a compensated
/// row sum, then squares chain by plain addition so the adjacency identities
/// x_{i+1,j} = x_{i,j} + n_{i,j}^-t and y_{i,j+1} = y_{i,j} + n_{i,j}^-t hold
/// bit-for-bit as stored.
std::vector<PlacedSquare> place_squares(const BlockSpec& spec);

/// The four gap families (surround / left / top / corner) with exact corner
/// coordinates; degenerate gaps are dropped and their area is accumulated
/// into *discarded_area.
std::vector<TaggedRect> enumerate_gaps(const BlockSpec& spec,
                                       std::span<const PlacedSquare> squares,
                                       double* discarded_area);

/// choose -> place -> gaps, with the construction run in whichever frame puts
/// the width on the x axis. On precondition failure writes *why and returns
/// nullopt.
std::optional<BlockResult> pack_block(const Rect& rect, std::int64_t n0, const Params& p,
                                      Violation* why);

}  // namespace sqpack
