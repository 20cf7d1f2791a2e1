#pragma once

#include <optional>
#include <vector>

#include "addbasis/bitset.hpp"
#include "addbasis/setspec.hpp"

namespace addbasis {

struct KernelOptions {
  // Worker threads for the shift-OR kernel; 1 runs inline. Output is
  // bit-identical for every value.
  unsigned threads = 1;
  // Number of operand runs handed to a worker at a time.
  std::size_t chunk_runs = 64;
  // Compute hA by square-and-multiply on the fold count instead of h-1
  // left-to-right additions.
  bool square_and_multiply = false;
  Natural max_bound = kDefaultMaxBound;
};

/// hA ∩ [0, bound]. Exact for the infinite set because all elements are >= 0.
struct SumsetResult {
  unsigned h;
  PrefixBitset bits;
  Natural bound() const noexcept { return bits.bound(); }
};

/// Ascending non-members of hA in [0, bound].
struct WitnessList {
  unsigned h;
  Natural bound;
  std::vector<Natural> gaps;
  bool truncated = false;
};

/// Ordered h-tuple count with saturation flag.
struct RepresentationCount {
  Natural count;
  bool saturated = false;
};

/// {p + q} ∩ [0, bound]. Both operands must cover at least [0, bound].
PrefixBitset pair_sumset(const PrefixBitset& p, const PrefixBitset& q, Natural bound,
                         const KernelOptions& opts = {});

/// h-fold sumset of an already materialized prefix; a.bound() is the result bound.
SumsetResult iterate_sumset(const PrefixBitset& a, unsigned h, const KernelOptions& opts = {});
SumsetResult iterate_sumset(const SetExpr& e, unsigned h, Natural bound, const KernelOptions& opts = {});

/// Counts ordered tuples by dynamic programming over the element list; shares
/// no code with the bitset kernel. h >= 1.
RepresentationCount representation_count(const SetExpr& e, unsigned h, Natural n,
                                         Natural max_bound = kDefaultMaxBound);

WitnessList complement_witnesses(const SumsetResult& s, std::optional<std::size_t> limit = std::nullopt);
WitnessList complement_witnesses(const SetExpr& e, unsigned h, Natural bound,
                                 std::optional<std::size_t> limit = std::nullopt, const KernelOptions& opts = {});

}  // namespace addbasis
