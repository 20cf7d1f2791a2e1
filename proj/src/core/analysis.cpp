#include "addbasis/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "addbasis/error.hpp"

namespace addbasis {

bool ratio_less(const Ratio& a, const Ratio& b) noexcept {
  return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

// ---------------------------------------------------------------------------
// Subsequences

std::vector<Natural> SubseqSpec::generate() const {
  std::vector<Natural> out;
  out.reserve(terms);
  for (unsigned i = 0; i < terms; ++i) {
    unsigned k = start + i;
    Natural core = base ? mul_or_throw(scale, pow_or_throw(*base, k, "subsequence term"), "subsequence term")
                        : mul_or_throw(scale, k, "subsequence term");
    Natural term;
    if (offset >= 0) {
      term = add_or_throw(core, static_cast<Natural>(offset), "subsequence term");
    } else {
      Natural neg = static_cast<Natural>(-(offset + 1)) + 1;
      if (core < neg) throw Error(ErrorKind::Precondition, "subsequence term at k=" + std::to_string(k) + " is negative");
      term = core - neg;
    }
    if (term < 1) throw Error(ErrorKind::Precondition, "subsequence term at k=" + std::to_string(k) + " is below 1");
    if (!out.empty() && term <= out.back())
      throw Error(ErrorKind::Precondition, "subsequence terms must be strictly increasing");
    out.push_back(term);
  }
  return out;
}

std::string SubseqSpec::formula() const {
  std::string s = std::to_string(scale) + "*" + (base ? std::to_string(*base) + "^k" : std::string("k"));
  if (offset > 0) s += "+" + std::to_string(offset);
  if (offset < 0) s += std::to_string(offset);
  return s;
}

SubseqSpec parse_subseq(std::string_view text, unsigned start, unsigned terms) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) { throw SyntaxError(pos, "subsequence '" + std::string(text) + "': " + msg); };
  auto number = [&]() -> Natural {
    std::size_t begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == begin) fail("expected integer");
    return parse_natural(std::string_view(s).substr(begin, pos - begin));
  };

  SubseqSpec spec;
  spec.start = start;
  spec.terms = terms;
  if (pos < s.size() && s[pos] == 'k') {
    ++pos;  // bare "k"
  } else {
    Natural first = number();
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      spec.scale = first;
      if (pos < s.size() && s[pos] == 'k') {
        ++pos;
      } else {
        spec.base = number();
        if (s.compare(pos, 2, "^k") != 0) fail("expected '^k'");
        pos += 2;
      }
    } else if (s.compare(pos, 2, "^k") == 0) {
      spec.base = first;
      pos += 2;
    } else {
      fail("expected '*' or '^k'");
    }
  }
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    bool neg = s[pos++] == '-';
    Natural c = number();
    if (c > static_cast<Natural>(std::numeric_limits<long long>::max())) fail("offset too large");
    spec.offset = neg ? -static_cast<long long>(c) : static_cast<long long>(c);
  }
  if (pos != s.size()) fail("unexpected trailing input");
  if (spec.base && *spec.base < 2) throw Error(ErrorKind::Semantic, "subsequence base must be >= 2");
  return spec;
}

// ---------------------------------------------------------------------------
// Counting and density

Natural counting(const SetExpr& e, Natural n) {
  Natural total = 0;
  if (n == 0) return 0;
  for (const Run& r : runs(e, 1, n)) total += r.length();
  return total;
}

std::optional<Ratio> DensityReport::min_ratio() const {
  if (rows.empty()) return std::nullopt;
  return rows.back().running_min;
}

std::optional<Ratio> DensityReport::max_ratio() const {
  if (rows.empty()) return std::nullopt;
  return rows.back().running_max;
}

namespace {

void fill_running(DensityReport& report) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    DensityRow& row = report.rows[i];
    row.running_min = row.running_max = row.ratio;
    if (i > 0) {
      const DensityRow& prev = report.rows[i - 1];
      if (ratio_less(prev.running_min, row.running_min)) row.running_min = prev.running_min;
      if (ratio_less(row.running_max, prev.running_max)) row.running_max = prev.running_max;
    }
  }
}

}  // namespace

DensityReport density_sequence(const SetExpr& e, unsigned t, const SubseqSpec& subseq, const KernelOptions& opts) {
  std::vector<Natural> terms = subseq.generate();
  DensityReport report{e.to_string(), t, {}};
  if (terms.empty()) return report;

  // t <= 1 counts straight from the run structure and needs no prefix bitset.
  std::optional<SumsetResult> sums;
  if (t >= 2) sums = iterate_sumset(e, t, terms.back(), opts);

  for (std::size_t i = 0; i < terms.size(); ++i) {
    Natural n = terms[i];
    Natural count = 0;
    if (t == 1)
      count = counting(e, n);
    else if (t >= 2)
      count = sums->bits.count_range(1, n);
    report.rows.push_back({subseq.start + static_cast<unsigned>(i), n, {count, n}, {}, {}});
  }
  fill_running(report);
  return report;
}

DensityReport merge_reports(const DensityReport& a, const DensityReport& b) {
  if (a.t != b.t || a.set_text != b.set_text)
    throw Error(ErrorKind::Precondition, "merged density reports must share set and fold count");
  DensityReport out{a.set_text, a.t, {}};
  std::merge(a.rows.begin(), a.rows.end(), b.rows.begin(), b.rows.end(), std::back_inserter(out.rows),
             [](const DensityRow& x, const DensityRow& y) { return x.n < y.n; });
  fill_running(out);
  return out;
}

WindowExtrema window_extrema(const DensityReport& report, std::size_t tail) {
  if (tail == 0 || report.rows.empty()) throw Error(ErrorKind::Precondition, "window_extrema over an empty window");
  if (tail > report.rows.size())
    throw Error(ErrorKind::Precondition, "tail " + std::to_string(tail) + " exceeds row count " +
                                             std::to_string(report.rows.size()));
  auto first = report.rows.end() - static_cast<std::ptrdiff_t>(tail);
  WindowExtrema w{first->ratio, first->ratio};
  for (auto it = first; it != report.rows.end(); ++it) {
    if (ratio_less(it->ratio, w.min)) w.min = it->ratio;
    if (ratio_less(w.max, it->ratio)) w.max = it->ratio;
  }
  return w;
}

HypothesisReport hypothesis_probe(const SetExpr& e, unsigned h, const SubseqSpec& subseq, double h2_threshold,
                                  const KernelOptions& opts) {
  if (h < 3) throw Error(ErrorKind::Precondition, "hypothesis probe needs h >= 3");
  if (subseq.terms < 1) throw Error(ErrorKind::Precondition, "hypothesis probe needs at least one term");
  HypothesisReport r{h, density_sequence(e, h - 2, subseq, opts), density_sequence(e, h - 1, subseq, opts),
                     h2_threshold, false, 0.0, 0.0, false};

  const auto& lower = r.lower_fold.rows;
  const Ratio& first = lower.front().ratio;
  const Ratio& last = lower.back().ratio;
  r.h2_ratio_trending_to_zero = ratio_less(last, first) && last.decimal() < h2_threshold;
  r.h2_tail_max = window_extrema(r.lower_fold, (lower.size() + 1) / 2).max.decimal();

  Ratio h1_max = *r.upper_fold.max_ratio();
  r.h1_ratio_max = h1_max.decimal();
  r.h1_strictly_below_one = h1_max.num < h1_max.den;
  return r;
}

}  // namespace addbasis
