#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addbasis/setspec.hpp"
#include "addbasis/sumset.hpp"

namespace addbasis {

/// count/n kept unreduced so the numerator is the counting function itself.
struct Ratio {
  Natural num;
  Natural den;
  double decimal() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Exact comparison by cross-multiplication.
bool ratio_less(const Ratio& a, const Ratio& b) noexcept;

/// n_k = scale * base^k + offset (geometric) or scale * k + offset (arithmetic),
/// for k = start, start+1, ..., start+terms-1.
struct SubseqSpec {
  Natural scale = 1;
  std::optional<Natural> base;  // absent: arithmetic sequence
  long long offset = 0;
  unsigned start = 1;
  unsigned terms = 1;

  /// Generated terms; throws on overflow, a term < 1, or non-increasing terms.
  std::vector<Natural> generate() const;
  /// Canonical form of the formula, e.g. "2*10^k+1".
  std::string formula() const;
};

/// Parses "a*b^k+c", "a*k+c", "b^k" and the evident partial forms ("k+2", "10^k-1").
SubseqSpec parse_subseq(std::string_view text, unsigned start = 1, unsigned terms = 1);

struct DensityRow {
  unsigned k;
  Natural n;
  Ratio ratio;  // ratio.num == (tA)(n)
  Ratio running_min;
  Ratio running_max;
};

struct DensityReport {
  std::string set_text;
  unsigned t;
  std::vector<DensityRow> rows;
  std::optional<Ratio> min_ratio() const;
  std::optional<Ratio> max_ratio() const;
};

struct HypothesisReport {
  unsigned h;
  DensityReport lower_fold;  // (h-2)A
  DensityReport upper_fold;  // (h-1)A
  double h2_threshold;
  bool h2_ratio_trending_to_zero;
  double h2_tail_max;
  double h1_ratio_max;
  bool h1_strictly_below_one;
};

struct WindowExtrema {
  Ratio min;
  Ratio max;
  double spread() const noexcept { return max.decimal() - min.decimal(); }
};

/// |e ∩ [1, n]|; zero is never counted.
Natural counting(const SetExpr& e, Natural n);

DensityReport density_sequence(const SetExpr& e, unsigned t, const SubseqSpec& subseq, const KernelOptions& opts = {});

/// Rows of two reports for the same set and fold count, ordered by n.
DensityReport merge_reports(const DensityReport& a, const DensityReport& b);

HypothesisReport hypothesis_probe(const SetExpr& e, unsigned h, const SubseqSpec& subseq, double h2_threshold = 0.01,
                                  const KernelOptions& opts = {});

/// Min/max of the last `tail` ratios: finite stand-ins for liminf/limsup.
WindowExtrema window_extrema(const DensityReport& report, std::size_t tail);

}  // namespace addbasis
