#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addbasis/analysis.hpp"
#include "addbasis/setspec.hpp"
#include "addbasis/sumset.hpp"

namespace addbasis {

// Bounds on o(A) from the prefix [0, bound].
//
// `upper` is the least h <= h_max with hA ⊇ [0, bound]; it holds for the
// prefix only. `lower` is certified for the infinite set: `witness` is a
// gap of (lower-1)A, and by truncation soundness that gap persists.
struct OrderReport {
  std::string set_text;
  Natural bound;
  unsigned h_max;
  bool zero_in_set;
  std::optional<unsigned> upper;
  unsigned lower;
  Natural witness;
  bool certified = true;
  std::vector<Natural> gap_counts;  // gaps of hA in [0, bound] for h = 0..scanned
};

struct StabilityVerdict {
  Natural n;
  bool in_sumset;
};

struct StabilityReport {
  std::string set_text;
  std::vector<Natural> augmentation;
  unsigned probe_fold;  // h - 1
  std::string family;
  Natural bound;
  std::vector<StabilityVerdict> verdicts;
  std::vector<Natural> survivors;
  /// Non-empty when at least one family term survives.
  std::string conclusion;
};

struct SweepRun {
  std::vector<Natural> augmentation;
  std::vector<Natural> survivors;
};

struct SweepReport {
  std::uint64_t seed;
  std::vector<Natural> family_terms;
  std::vector<SweepRun> runs;
  /// True when every run kept every family term outside the sumset.
  bool all_survived;
};

struct SweepOptions {
  std::size_t runs = 100;
  Natural f_max = 1000;       // F ⊆ [0, f_max]
  std::size_t f_max_size = 5; // |F| <= f_max_size
  std::uint64_t seed = 1;
};

OrderReport order_bounds(const SetExpr& e, Natural bound, unsigned h_max, const KernelOptions& opts = {},
                         bool verify_certificate = true);

/// Decides each family term against (h-1)(A ∪ F). Survivors are re-verified
/// with representation_count when `verify_survivors` is set.
StabilityReport stability_probe(const SetExpr& e, std::vector<Natural> augmentation, unsigned h,
                                const SubseqSpec& family, Natural bound, const KernelOptions& opts = {},
                                bool verify_survivors = true);

/// Repeats stability_probe over seeded random augmentations.
SweepReport stability_sweep(const SetExpr& e, unsigned h, const SubseqSpec& family, Natural bound,
                            const SweepOptions& sweep = {}, const KernelOptions& opts = {});

}  // namespace addbasis
