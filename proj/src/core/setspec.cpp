#include "addbasis/setspec.hpp"

#include <algorithm>
#include <cctype>

#include "addbasis/error.hpp"

namespace addbasis {

namespace {

std::vector<Natural> normalized(std::vector<Natural> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

// ---------------------------------------------------------------------------
// Construction

SetExpr SetExpr::explicit_set(std::vector<Natural> elements) {
  return SetExpr(expr::Explicit{normalized(std::move(elements))});
}

SetExpr SetExpr::interval(Natural lo, Natural hi) {
  if (lo > hi)
    throw Error(ErrorKind::Semantic,
                "interval lower end " + std::to_string(lo) + " exceeds upper end " + std::to_string(hi));
  return SetExpr(expr::Interval{lo, hi});
}

SetExpr SetExpr::powers(unsigned exponent) {
  if (exponent < 1) throw Error(ErrorKind::Semantic, "powers exponent must be >= 1");
  return SetExpr(expr::Powers{exponent});
}

SetExpr SetExpr::paper_family(Natural base, Natural head_end, Natural mult, Natural offset) {
  if (base < 3) throw Error(ErrorKind::Semantic, "paperfamily base must be >= 3");
  if (head_end < 1) throw Error(ErrorKind::Semantic, "paperfamily head end must be >= 1");
  if (mult < 1) throw Error(ErrorKind::Semantic, "paperfamily multiplier must be >= 1");
  // Block 2 must be non-empty: mult*base + offset <= base^2. Larger blocks follow by growth.
  auto lo2 = checked_mul(mult, base);
  if (lo2) lo2 = checked_add(*lo2, offset);
  auto hi2 = checked_mul(base, base);
  if (!lo2 || !hi2 || *lo2 > *hi2)
    throw Error(ErrorKind::Semantic, "paperfamily requires mult*base + offset <= base^2");
  return SetExpr(expr::PaperFamily{base, head_end, mult, offset});
}

SetExpr SetExpr::set_union(SetExpr left, SetExpr right) {
  return SetExpr(expr::Union{std::make_shared<const SetExpr>(std::move(left)),
                             std::make_shared<const SetExpr>(std::move(right))});
}

SetExpr SetExpr::augment(SetExpr base, std::vector<Natural> extra) {
  return SetExpr(expr::Augment{std::make_shared<const SetExpr>(std::move(base)), normalized(std::move(extra))});
}

bool operator==(const SetExpr& a, const SetExpr& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      overloaded{
          [&](const expr::Union& u) {
            const auto& v = std::get<expr::Union>(b.node_);
            return *u.left == *v.left && *u.right == *v.right;
          },
          [&](const expr::Augment& u) {
            const auto& v = std::get<expr::Augment>(b.node_);
            return u.extra == v.extra && *u.base == *v.base;
          },
          [&](const auto& x) { return x == std::get<std::decay_t<decltype(x)>>(b.node_); },
      },
      a.node_);
}

// ---------------------------------------------------------------------------
// Canonical printer

namespace {

std::string join(const std::vector<Natural>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

bool is_atom(const SetExpr& e) {
  return !std::holds_alternative<expr::Union>(e.node()) && !std::holds_alternative<expr::Augment>(e.node());
}

}  // namespace

std::string SetExpr::to_string() const {
  return std::visit(
      overloaded{
          [](const expr::Explicit& x) { return "explicit{" + join(x.elements) + "}"; },
          [](const expr::Interval& x) {
            return "interval[" + std::to_string(x.lo) + "," + std::to_string(x.hi) + "]";
          },
          [](const expr::Powers& x) { return "powers(" + std::to_string(x.exponent) + ")"; },
          [](const expr::PaperFamily& x) {
            return "paperfamily(" + std::to_string(x.base) + "," + std::to_string(x.head_end) + "," +
                   std::to_string(x.mult) + "," + std::to_string(x.offset) + ")";
          },
          [](const expr::Union& x) {
            // Union parses left-associatively, so only a right-nested union needs parentheses.
            std::string right = x.right->to_string();
            if (std::holds_alternative<expr::Union>(x.right->node())) right = "(" + right + ")";
            return x.left->to_string() + " | " + right;
          },
          [](const expr::Augment& x) {
            std::string base = x.base->to_string();
            if (!is_atom(*x.base)) base = "(" + base + ")";
            return base + " + {" + join(x.extra) + "}";
          },
      },
      node_);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = parse_set();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }

  bool peek(char ch) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  Natural parse_int() {
    skip_ws();
    std::size_t start = pos_;
    Natural value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      auto v = checked_mul(value, 10);
      if (v) v = checked_add(*v, static_cast<Natural>(text_[pos_] - '0'));
      if (!v) {
        pos_ = start;
        fail("integer exceeds 64 bits");
      }
      value = *v;
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return value;
  }

  // Possibly-empty list terminated by `close` (which is consumed).
  std::vector<Natural> parse_intlist(char close) {
    std::vector<Natural> out;
    if (accept(close)) return out;
    out.push_back(parse_int());
    while (accept(',')) out.push_back(parse_int());
    expect(close);
    return out;
  }

  std::string parse_word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  SetExpr parse_set() {
    SetExpr e = parse_term();
    while (accept('|')) e = SetExpr::set_union(std::move(e), parse_term());
    return e;
  }

  SetExpr parse_term() {
    SetExpr e = parse_atom();
    if (accept('+')) {
      expect('{');
      e = SetExpr::augment(std::move(e), parse_intlist('}'));
    }
    return e;
  }

  // Runs a semantic constructor, reporting its failure at `at`.
  template <class F>
  SetExpr semantic(std::size_t at, F&& make) {
    try {
      return make();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& err) {
      throw Error(err.kind(), "at byte " + std::to_string(at) + ": " + err.what());
    }
  }

  SetExpr parse_atom() {
    if (accept('(')) {
      SetExpr e = parse_set();
      expect(')');
      return e;
    }
    skip_ws();
    std::size_t at = pos_;
    std::string word = parse_word();
    if (word == "explicit") {
      expect('{');
      return SetExpr::explicit_set(parse_intlist('}'));
    }
    if (word == "interval") {
      expect('[');
      Natural lo = parse_int();
      expect(',');
      Natural hi = parse_int();
      expect(']');
      return semantic(at, [&] { return SetExpr::interval(lo, hi); });
    }
    if (word == "powers") {
      expect('(');
      std::size_t kat = pos_;
      Natural k = parse_int();
      expect(')');
      if (k > 64) {
        pos_ = kat;
        fail("powers exponent must be <= 64");
      }
      return semantic(at, [&] { return SetExpr::powers(static_cast<unsigned>(k)); });
    }
    if (word == "paperfamily") {
      expect('(');
      Natural p[4];
      for (int i = 0; i < 4; ++i) {
        if (i) expect(',');
        p[i] = parse_int();
      }
      expect(')');
      return semantic(at, [&] { return SetExpr::paper_family(p[0], p[1], p[2], p[3]); });
    }
    if (word == "counterexample") return SetExpr::counterexample();
    if (word == "squares") return SetExpr::powers(2);
    if (word == "cubes") return SetExpr::powers(3);
    pos_ = at;
    if (word.empty()) fail("expected set expression");
    fail("unknown set keyword '" + word + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetExpr parse_set_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

FamilyBlock family_block(const expr::PaperFamily& p, unsigned n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "family block index must be >= 1");
  if (n == 1) return {1, 0, p.head_end};
  Natural prev = pow_or_throw(p.base, n - 1, "family block lower end");
  Natural lo = add_or_throw(mul_or_throw(p.mult, prev, "family block lower end"), p.offset, "family block lower end");
  Natural hi = mul_or_throw(prev, p.base, "family block upper end");
  return {n, lo, hi};
}

namespace {

bool family_contains(const expr::PaperFamily& p, Natural n) {
  if (n <= p.head_end) return true;
  // Lower ends strictly increase, so n < lo_k rules out every later block too.
  for (Natural prev = p.base;; ) {
    auto lo = checked_mul(p.mult, prev);
    if (lo) lo = checked_add(*lo, p.offset);
    if (!lo || n < *lo) return false;
    auto hi = checked_mul(prev, p.base);
    if (!hi || n <= *hi) return true;  // an overflowing upper end covers all of 64-bit range
    prev = *hi;
  }
}

bool powers_contains(unsigned k, Natural n) {
  if (k == 1) return true;
  Natural r = integer_root(n, k);
  auto p = checked_pow(r, k);
  return p && *p == n;
}

void append_run(std::vector<Run>& out, Run r) {
  if (!out.empty() && (r.lo <= out.back().hi || r.lo - out.back().hi == 1)) {
    out.back().hi = std::max(out.back().hi, r.hi);
    return;
  }
  out.push_back(r);
}

std::vector<Run> merge_runs(const std::vector<Run>& a, const std::vector<Run>& b) {
  std::vector<Run> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].lo <= b[j].lo))
      append_run(out, a[i++]);
    else
      append_run(out, b[j++]);
  }
  return out;
}

std::vector<Run> point_runs(const std::vector<Natural>& pts, Natural lo, Natural hi) {
  std::vector<Run> out;
  for (auto it = std::lower_bound(pts.begin(), pts.end(), lo); it != pts.end() && *it <= hi; ++it)
    append_run(out, {*it, *it});
  return out;
}

std::vector<Run> family_runs(const expr::PaperFamily& p, Natural lo, Natural hi) {
  std::vector<Run> out;
  auto clip = [&](Natural a, Natural b) {
    if (b < lo || a > hi) return;
    append_run(out, {std::max(a, lo), std::min(b, hi)});
  };
  clip(0, p.head_end);
  for (Natural prev = p.base;;) {
    auto blo = checked_mul(p.mult, prev);
    if (blo) blo = checked_add(*blo, p.offset);
    if (!blo || *blo > hi) break;
    auto bhi = checked_mul(prev, p.base);
    clip(*blo, bhi ? *bhi : ~Natural{0});
    if (!bhi) break;
    prev = *bhi;
  }
  // Blocks may touch or overlap the head for unusual parameters.
  std::vector<Run> merged;
  std::sort(out.begin(), out.end(), [](const Run& a, const Run& b) { return a.lo < b.lo; });
  for (const Run& r : out) append_run(merged, r);
  return merged;
}

std::vector<Run> powers_runs(unsigned k, Natural lo, Natural hi) {
  std::vector<Run> out;
  if (k == 1) {
    out.push_back({lo, hi});
    return out;
  }
  Natural r = lo == 0 ? 0 : integer_root(lo - 1, k) + 1;
  for (;; ++r) {
    auto v = checked_pow(r, k);
    if (!v || *v > hi) break;
    append_run(out, {*v, *v});
  }
  return out;
}

}  // namespace

bool contains(const SetExpr& e, Natural n) {
  return std::visit(
      overloaded{
          [&](const expr::Explicit& x) { return std::binary_search(x.elements.begin(), x.elements.end(), n); },
          [&](const expr::Interval& x) { return x.lo <= n && n <= x.hi; },
          [&](const expr::Powers& x) { return powers_contains(x.exponent, n); },
          [&](const expr::PaperFamily& x) { return family_contains(x, n); },
          [&](const expr::Union& x) { return contains(*x.left, n) || contains(*x.right, n); },
          [&](const expr::Augment& x) {
            return std::binary_search(x.extra.begin(), x.extra.end(), n) || contains(*x.base, n);
          },
      },
      e.node());
}

std::vector<Run> runs(const SetExpr& e, Natural lo, Natural hi) {
  if (lo > hi) return {};
  return std::visit(
      overloaded{
          [&](const expr::Explicit& x) { return point_runs(x.elements, lo, hi); },
          [&](const expr::Interval& x) {
            std::vector<Run> out;
            if (x.hi >= lo && x.lo <= hi) out.push_back({std::max(x.lo, lo), std::min(x.hi, hi)});
            return out;
          },
          [&](const expr::Powers& x) { return powers_runs(x.exponent, lo, hi); },
          [&](const expr::PaperFamily& x) { return family_runs(x, lo, hi); },
          [&](const expr::Union& x) { return merge_runs(runs(*x.left, lo, hi), runs(*x.right, lo, hi)); },
          [&](const expr::Augment& x) { return merge_runs(runs(*x.base, lo, hi), point_runs(x.extra, lo, hi)); },
      },
      e.node());
}

PrefixBitset materialize(const SetExpr& e, Natural bound, Natural max_bound) {
  if (bound > max_bound)
    throw Error(ErrorKind::BoundCeiling,
                "bound " + std::to_string(bound) + " exceeds the memory ceiling " + std::to_string(max_bound));
  PrefixBitset bits(bound);
  for (const Run& r : runs(e, 0, bound)) bits.set_range(r.lo, r.hi);
  return bits;
}

}  // namespace addbasis
