#include "doctest.h"

#include "addbasis/analysis.hpp"
#include "addbasis/error.hpp"
#include "oracle.hpp"

using namespace addbasis;

namespace {
std::vector<std::string> ratios(const DensityReport& d) {
  std::vector<std::string> out;
  for (const auto& r : d.rows) out.push_back(r.ratio.to_string());
  return out;
}
}  // namespace

TEST_CASE("counting: examples") {
  CHECK(counting(SetExpr::counterexample(), 21) == 10);
  CHECK(counting(SetExpr::counterexample(), 201) == 89);
  CHECK(counting(SetExpr::explicit_set({0}), 100) == 0);
  CHECK(counting(SetExpr::counterexample(), 0) == 0);
  CHECK(counting(SetExpr::counterexample(), 10) == 10);
}

TEST_CASE("counting runs far past the bitset ceiling") {
  // A(2*10^k + 1) = 10 + sum_{i=1}^{k-1} (8*10^i - 1) by block enumeration.
  Natural expected = 10;
  Natural p = 10;
  for (unsigned k = 1; k <= 18; ++k) {
    CHECK(counting(SetExpr::counterexample(), 2 * p + 1) == expected);
    CHECK(counting(SetExpr::counterexample(), p) == expected);
    expected += 8 * p - 1;
    if (k < 18) p *= 10;
  }
  CHECK(counting(SetExpr::powers(2), 1000000000000ULL) == 1000000);
}

TEST_CASE("property: counting equals the popcount of bits 1..n and the oracle") {
  oracle::ExprGen gen(43);
  for (int i = 0; i < 30; ++i) {
    SetExpr e = gen.expr(5000);
    PrefixBitset bits = materialize(e, 10000);
    Natural prev = 0;
    for (Natural n = 0; n <= 10000; n += 37) {
      Natural c = counting(e, n);
      CHECK(c == bits.count_range(1, n));
      CHECK(c <= n);
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(counting(e, 777) == oracle::counting(e, 777));
  }
}

TEST_CASE("counterexample: no members in (10^k, 2*10^k+1]") {
  Natural p = 10;
  for (unsigned k = 1; k <= 18; ++k, p *= 10)
    CHECK(counting(SetExpr::counterexample(), 2 * p + 1) == counting(SetExpr::counterexample(), p));
}

TEST_CASE("parse_subseq: forms") {
  SubseqSpec a = parse_subseq("2*10^k+1", 1, 5);
  CHECK(a.generate() == std::vector<Natural>{21, 201, 2001, 20001, 200001});
  CHECK(a.formula() == "2*10^k+1");
  CHECK(parse_subseq("10^k", 2, 3).generate() == std::vector<Natural>{100, 1000, 10000});
  CHECK(parse_subseq("3*k+2", 0, 3).generate() == std::vector<Natural>{2, 5, 8});
  CHECK(parse_subseq("k+2", 1, 3).generate() == std::vector<Natural>{3, 4, 5});
  CHECK(parse_subseq(" 10 ^ k - 1 ", 1, 2).generate() == std::vector<Natural>{9, 99});
  CHECK_THROWS_AS(parse_subseq("2*10^j+1"), SyntaxError);
  CHECK_THROWS_AS(parse_subseq("1^k"), Error);
  CHECK_THROWS_AS(parse_subseq("10^k-10", 1, 2).generate(), Error);  // first term is 0
  CHECK_THROWS_AS(parse_subseq("0*k+4", 1, 2).generate(), Error);    // not increasing
  CHECK_THROWS_AS(parse_subseq("10^k", 1, 25).generate(), Error);    // overflow
}

TEST_CASE("density_sequence: liminf subsequence") {
  DensityReport d = density_sequence(SetExpr::counterexample(), 1, parse_subseq("2*10^k+1", 1, 5));
  CHECK(ratios(d) == std::vector<std::string>{"10/21", "89/201", "888/2001", "8887/20001", "88886/200001"});
  CHECK(std::abs(d.rows.back().ratio.decimal() - 4.0 / 9.0) < 1e-4);
  CHECK(d.min_ratio()->to_string() == "89/201");
  CHECK(d.max_ratio()->to_string() == "10/21");
}

TEST_CASE("density_sequence: limsup subsequence including the degenerate k=1 row") {
  DensityReport d = density_sequence(SetExpr::counterexample(), 1, parse_subseq("10^k", 1, 5));
  CHECK(ratios(d) == std::vector<std::string>{"10/10", "89/100", "888/1000", "8887/10000", "88886/100000"});
  CHECK(std::abs(d.rows.back().ratio.decimal() - 8.0 / 9.0) < 1e-4);
}

TEST_CASE("density_sequence: trivial and folded sets") {
  DensityReport d = density_sequence(SetExpr::explicit_set({0, 1}), 1, parse_subseq("10^k", 1, 3));
  CHECK(ratios(d) == std::vector<std::string>{"1/10", "1/100", "1/1000"});
  DensityReport z = density_sequence(SetExpr::counterexample(), 0, parse_subseq("10^k", 1, 2));
  CHECK(ratios(z) == std::vector<std::string>{"0/10", "0/100"});
  // 2A of the counterexample misses only 2*10^k+1 below 2.1e4
  DensityReport two = density_sequence(SetExpr::counterexample(), 2, parse_subseq("10^k", 2, 3));
  CHECK(ratios(two) == std::vector<std::string>{"99/100", "998/1000", "9997/10000"});
}

TEST_CASE("density_sequence: ceiling applies once a sumset is needed") {
  KernelOptions small;
  small.max_bound = 1000;
  CHECK_NOTHROW(density_sequence(SetExpr::counterexample(), 1, parse_subseq("10^k", 1, 6), small));
  CHECK_THROWS_AS(density_sequence(SetExpr::counterexample(), 2, parse_subseq("10^k", 1, 6), small), Error);
}

TEST_CASE("property: density rows stay in [0,1] with non-decreasing counts") {
  oracle::ExprGen gen(47);
  for (int i = 0; i < 20; ++i) {
    SetExpr e = gen.expr(3000);
    for (unsigned t = 0; t <= 3; ++t) {
      DensityReport d = density_sequence(e, t, parse_subseq("7*k+3", 1, 40));
      Natural prev = 0;
      for (const auto& row : d.rows) {
        CHECK(row.ratio.num <= row.ratio.den);
        CHECK(row.ratio.den == row.n);
        CHECK(row.ratio.num >= prev);
        prev = row.ratio.num;
      }
    }
  }
}

TEST_CASE("window_extrema: examples") {
  SetExpr cx = SetExpr::counterexample();
  DensityReport low = density_sequence(cx, 1, parse_subseq("2*10^k+1", 3, 3));
  DensityReport high = density_sequence(cx, 1, parse_subseq("10^k", 3, 3));
  DensityReport merged = merge_reports(low, high);
  REQUIRE(merged.rows.size() == 6);
  CHECK(merged.rows.front().n == 1000);
  CHECK(merged.rows.back().n == 200001);
  WindowExtrema w = window_extrema(merged, 4);
  CHECK(w.min.to_string() == "8887/20001");
  CHECK(w.max.to_string() == "88886/100000");
  CHECK(w.min.decimal() == doctest::Approx(0.4443).epsilon(1e-3));
  CHECK(w.max.decimal() == doctest::Approx(0.8889).epsilon(1e-3));
  CHECK(w.spread() > 0.4);

  DensityReport flat = density_sequence(SetExpr::interval(0, 1000), 1, parse_subseq("100*k", 1, 10));
  WindowExtrema f = window_extrema(flat, 7);
  CHECK(f.min == f.max);

  DensityReport one = density_sequence(cx, 1, parse_subseq("10^k", 2, 1));
  WindowExtrema o = window_extrema(one, 1);
  CHECK(o.min == o.max);
  CHECK(o.min.to_string() == "89/100");

  CHECK_THROWS_AS(window_extrema(one, 0), Error);
  CHECK_THROWS_AS(window_extrema(one, 2), Error);
}

TEST_CASE("hypothesis_probe: squares at h=4") {
  HypothesisReport p = hypothesis_probe(SetExpr::powers(2), 4, parse_subseq("10^k", 2, 5));
  // Brute-force counts of sums of two squares in [1, 10^k].
  CHECK(ratios(p.lower_fold) ==
        std::vector<std::string>{"43/100", "330/1000", "2749/10000", "24028/100000", "216341/1000000"});
  // ... and of three squares.
  CHECK(ratios(p.upper_fold) ==
        std::vector<std::string>{"85/100", "835/1000", "8335/10000", "83336/100000", "833336/1000000"});
  for (std::size_t i = 1; i < p.lower_fold.rows.size(); ++i)
    CHECK(ratio_less(p.lower_fold.rows[i].ratio, p.lower_fold.rows[i - 1].ratio));
  CHECK(p.h1_strictly_below_one);
  CHECK(p.h1_ratio_max < 1.0);
  // 2·N² has density zero, but at 10^6 the ratio is still ~0.22.
  CHECK_FALSE(p.h2_ratio_trending_to_zero);
  CHECK(p.h2_tail_max == doctest::Approx(0.2749));
}

TEST_CASE("hypothesis_probe: counterexample fails the first hypothesis") {
  HypothesisReport p = hypothesis_probe(SetExpr::counterexample(), 3, parse_subseq("2*10^k+1", 1, 5));
  CHECK(ratios(p.lower_fold) ==
        std::vector<std::string>{"10/21", "89/201", "888/2001", "8887/20001", "88886/200001"});
  CHECK_FALSE(p.h2_ratio_trending_to_zero);
  CHECK(p.h2_tail_max > 0.44);
  CHECK(p.h1_strictly_below_one);  // 2A misses every 2*10^k+1
}

TEST_CASE("hypothesis_probe: finite set") {
  HypothesisReport p = hypothesis_probe(SetExpr::explicit_set({0, 1}), 3, parse_subseq("10^k", 1, 4));
  CHECK(ratios(p.lower_fold) == std::vector<std::string>{"1/10", "1/100", "1/1000", "1/10000"});
  CHECK(ratios(p.upper_fold) == std::vector<std::string>{"2/10", "2/100", "2/1000", "2/10000"});
  CHECK(p.h2_ratio_trending_to_zero);
  CHECK(p.h1_strictly_below_one);
  CHECK_THROWS_AS(hypothesis_probe(SetExpr::explicit_set({0, 1}), 2, parse_subseq("10^k", 1, 4)), Error);
}

TEST_CASE("hypothesis_probe: verdicts are recomputable from the rows") {
  HypothesisReport p = hypothesis_probe(SetExpr::powers(3), 5, parse_subseq("10^k", 1, 4), 0.5);
  const auto& low = p.lower_fold.rows;
  bool trend = ratio_less(low.back().ratio, low.front().ratio) && low.back().ratio.decimal() < 0.5;
  CHECK(p.h2_ratio_trending_to_zero == trend);
  Ratio mx = p.upper_fold.rows.front().ratio;
  for (const auto& r : p.upper_fold.rows)
    if (ratio_less(mx, r.ratio)) mx = r.ratio;
  CHECK(p.h1_ratio_max == mx.decimal());
  CHECK(p.h1_strictly_below_one == (mx.num < mx.den));
}
