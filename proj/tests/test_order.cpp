#include "doctest.h"

#include <random>

#include "addbasis/error.hpp"
#include "addbasis/order.hpp"
#include "oracle.hpp"

using namespace addbasis;

TEST_CASE("order_bounds: counterexample, squares, cubes") {
  OrderReport cx = order_bounds(SetExpr::counterexample(), 100000, 5);
  CHECK(cx.upper == 3u);
  CHECK(cx.lower == 3);
  CHECK(cx.witness == 21);
  CHECK(cx.certified);
  CHECK(cx.zero_in_set);

  OrderReport sq = order_bounds(SetExpr::powers(2), 10000, 6);
  CHECK(sq.upper == 4u);
  CHECK(sq.lower == 4);
  CHECK(sq.witness == 7);

  OrderReport cu = order_bounds(SetExpr::powers(3), 10000, 10);
  CHECK(cu.upper == 9u);
  CHECK(cu.lower == 9);
  CHECK(cu.witness == 23);
  // gap counts of hA on [0, 10^4] for h = 0..9, from brute force
  CHECK(cu.gap_counts == std::vector<Natural>{10000, 9979, 9777, 8648, 5305, 1463, 138, 17, 2, 0});
}

TEST_CASE("order_bounds: no coverage within h_max") {
  OrderReport r = order_bounds(SetExpr::powers(2), 10000, 2);
  CHECK_FALSE(r.upper.has_value());
  CHECK(r.lower == 3);
  CHECK(r.witness == 3);

  // Without 0 the window [0, N] can never be covered; 0 itself is the witness.
  OrderReport nz = order_bounds(SetExpr::interval(1, 100), 100, 4);
  CHECK_FALSE(nz.zero_in_set);
  CHECK_FALSE(nz.upper.has_value());
  CHECK(nz.lower == 5);
  CHECK(nz.witness == 0);

  CHECK_THROWS_AS(order_bounds(SetExpr::powers(2), 100, 0), Error);
}

TEST_CASE("order_bounds: degenerate windows") {
  OrderReport one = order_bounds(SetExpr::explicit_set({0, 1}), 0, 3);
  CHECK(one.upper == 1u);
  CHECK(one.lower == 1);
  CHECK_FALSE(one.certified);

  OrderReport pt = order_bounds(SetExpr::explicit_set({0, 1}), 5, 6);
  CHECK(pt.upper == 5u);
  CHECK(pt.lower == 5);
  CHECK(pt.witness == 5);
}

TEST_CASE("property: lower <= upper and witnesses re-verify independently") {
  oracle::ExprGen gen(53);
  for (int i = 0; i < 30; ++i) {
    SetExpr e = SetExpr::augment(gen.expr(400), {0, 1});
    OrderReport r = order_bounds(e, 600, 8, {}, false);
    if (r.upper) CHECK(r.lower <= *r.upper);
    if (r.upper) CHECK(r.lower == *r.upper);
    if (r.lower >= 2) {
      auto elems = oracle::elements(oracle::prefix(e, r.witness));
      CHECK(oracle::tuples(elems, r.lower - 1, r.witness) == 0);
    }
  }
}

TEST_CASE("property: larger windows never lower the certified bound") {
  for (const char* text : {"squares", "cubes", "counterexample", "paperfamily(4,2,2,3)", "explicit{0,1,7} | powers(4)"}) {
    SetExpr e = parse_set_expr(text);
    unsigned prev = 0;
    for (Natural bound : {50, 500, 5000, 20000}) {
      OrderReport r = order_bounds(e, bound, 12);
      CHECK(r.lower >= prev);
      prev = r.lower;
    }
  }
}

TEST_CASE("stability_probe: filling the first gap still leaves the family") {
  std::vector<Natural> f;
  for (Natural x = 11; x <= 21; ++x) f.push_back(x);
  StabilityReport r =
      stability_probe(SetExpr::counterexample(), f, 3, parse_subseq("2*10^k+1", 2, 4), 210000);
  CHECK(r.probe_fold == 2);
  CHECK(std::find(r.survivors.begin(), r.survivors.end(), 20001) != r.survivors.end());
  CHECK(std::find(r.survivors.begin(), r.survivors.end(), 200001) != r.survivors.end());
  // 201 = 101 + 100 is out of reach of F, so it survives too; 2001 likewise.
  CHECK(r.survivors == std::vector<Natural>{201, 2001, 20001, 200001});
  CHECK(r.conclusion == "order-2 ruled out up to 210000");
}

TEST_CASE("stability_probe: plain counterexample keeps every witness") {
  StabilityReport r = stability_probe(SetExpr::counterexample(), {}, 3, parse_subseq("2*10^k+1", 1, 4), 21000);
  CHECK(r.survivors == std::vector<Natural>{21, 201, 2001, 20001});
  for (const auto& v : r.verdicts) CHECK_FALSE(v.in_sumset);
}

TEST_CASE("stability_probe: h-1 = 1 reduces to membership") {
  StabilityReport r = stability_probe(SetExpr::explicit_set({0, 1}), {5}, 2, parse_subseq("k+2", 1, 3), 10);
  CHECK(r.verdicts.size() == 3);
  CHECK(r.survivors == std::vector<Natural>{3, 4});
  CHECK(r.verdicts[2].n == 5);
  CHECK(r.verdicts[2].in_sumset);
}

TEST_CASE("stability_probe: preconditions") {
  CHECK_THROWS_AS(stability_probe(SetExpr::counterexample(), {}, 3, parse_subseq("2*10^k+1", 1, 4), 20000), Error);
  CHECK_THROWS_AS(stability_probe(SetExpr::counterexample(), {}, 1, parse_subseq("2*10^k+1", 1, 2), 20000), Error);
}

TEST_CASE("property: adding elements only removes survivors") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<Natural> elem(0, 2100);
  SubseqSpec family = parse_subseq("k", 1, 2100);
  for (int i = 0; i < 20; ++i) {
    std::vector<Natural> f(8);
    for (auto& x : f) x = elem(rng);
    std::vector<Natural> sub(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(rng() % 9));
    auto small = stability_probe(SetExpr::counterexample(), sub, 3, family, 2100, {}, false);
    auto big = stability_probe(SetExpr::counterexample(), f, 3, family, 2100, {}, false);
    CHECK(std::includes(small.survivors.begin(), small.survivors.end(), big.survivors.begin(), big.survivors.end()));
  }
}

TEST_CASE("randomized sweep keeps 20001 and 200001 outside 2(A u F)") {
  SweepOptions sweep;
  sweep.seed = 2024;
  SweepReport s = stability_sweep(SetExpr::counterexample(), 3, parse_subseq("2*10^k+1", 4, 2), 200001, sweep);
  CHECK(s.runs.size() == 100);
  CHECK(s.family_terms == std::vector<Natural>{20001, 200001});
  CHECK(s.all_survived);
  for (const auto& run : s.runs) {
    CHECK(run.augmentation.size() <= 5);
    for (Natural x : run.augmentation) CHECK(x <= 1000);
    CHECK(run.survivors == s.family_terms);
  }
}
