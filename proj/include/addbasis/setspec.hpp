#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "addbasis/bitset.hpp"
#include "addbasis/natural.hpp"

namespace addbasis {

/// Default memory ceiling for materialized prefixes.
inline constexpr Natural kDefaultMaxBound = Natural{1} << 31;

class SetExpr;

namespace expr {

struct Explicit {
  std::vector<Natural> elements;  // sorted, unique
  friend bool operator==(const Explicit&, const Explicit&) = default;
};

struct Interval {
  Natural lo;
  Natural hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// {n^exponent : n in N}
struct Powers {
  unsigned exponent;
  friend bool operator==(const Powers&, const Powers&) = default;
};

// A_1 = [0, head_end], A_n = [mult * base^(n-1) + offset, base^n] for n >= 2.
struct PaperFamily {
  Natural base = 10;
  Natural head_end = 10;
  Natural mult = 2;
  Natural offset = 2;
  friend bool operator==(const PaperFamily&, const PaperFamily&) = default;
};

struct Union {
  std::shared_ptr<const SetExpr> left;
  std::shared_ptr<const SetExpr> right;
};

struct Augment {
  std::shared_ptr<const SetExpr> base;
  std::vector<Natural> extra;  // sorted, unique
};

}  // namespace expr

/// Immutable AST for a structured subset of N. Construct through the
/// factories, which validate and normalize.
class SetExpr {
 public:
  using Node = std::variant<expr::Explicit, expr::Interval, expr::Powers, expr::PaperFamily, expr::Union,
                            expr::Augment>;

  static SetExpr explicit_set(std::vector<Natural> elements);
  static SetExpr interval(Natural lo, Natural hi);
  static SetExpr powers(unsigned exponent);
  static SetExpr paper_family(Natural base, Natural head_end, Natural mult, Natural offset);
  static SetExpr counterexample() { return paper_family(10, 10, 2, 2); }
  static SetExpr set_union(SetExpr left, SetExpr right);
  static SetExpr augment(SetExpr base, std::vector<Natural> extra);

  const Node& node() const noexcept { return node_; }

  /// Canonical text; parse(to_string()) reproduces an equal expression.
  std::string to_string() const;

  friend bool operator==(const SetExpr& a, const SetExpr& b);

 private:
  explicit SetExpr(Node node) : node_(std::move(node)) {}
  Node node_;
};

/// Block n of a PaperFamily.
struct FamilyBlock {
  unsigned index;
  Natural lo;
  Natural hi;
  Natural cardinality() const noexcept { return hi - lo + 1; }
};

SetExpr parse_set_expr(std::string_view text);

FamilyBlock family_block(const expr::PaperFamily& params, unsigned n);

/// Exact membership without materializing.
bool contains(const SetExpr& e, Natural n);

/// Members of e in [lo, hi] as ascending, disjoint, non-adjacent runs.
std::vector<Run> runs(const SetExpr& e, Natural lo, Natural hi);

/// Exact prefix e ∩ [0, bound]. Throws BoundCeiling when bound > max_bound.
PrefixBitset materialize(const SetExpr& e, Natural bound, Natural max_bound = kDefaultMaxBound);

}  // namespace addbasis
