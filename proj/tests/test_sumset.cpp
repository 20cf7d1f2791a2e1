#include "doctest.h"

#include "addbasis/error.hpp"
#include "addbasis/sumset.hpp"
#include "oracle.hpp"

using namespace addbasis;

namespace {

PrefixBitset bits_of(std::initializer_list<Natural> xs, Natural bound) {
  PrefixBitset b(bound);
  for (Natural x : xs) b.set(x);
  return b;
}

bool equals_oracle(const PrefixBitset& b, const std::vector<bool>& ref) {
  if (b.bound() + 1 != ref.size()) return false;
  for (Natural i = 0; i < ref.size(); ++i)
    if (b.test(i) != ref[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("PrefixBitset range primitives") {
  PrefixBitset b(200);
  b.set_range(3, 130);
  CHECK(b.count() == 128);
  CHECK(b.count_range(0, 63) == 61);
  CHECK(b.count_range(64, 127) == 64);
  CHECK(*b.next_clear(3) == 131);
  CHECK(*b.next_set(0) == 3);
  CHECK_FALSE(b.next_set(131).has_value());
  b.set_range(150, 5000);  // clipped at the bound
  CHECK(b.count() == 128 + 51);
  CHECK_FALSE(b.next_clear(150).has_value());
  CHECK(b.runs() == std::vector<Run>{{3, 130}, {150, 200}});
}

TEST_CASE("pair_sumset: examples") {
  CHECK(pair_sumset(bits_of({0, 1}, 3), bits_of({0, 1}, 3), 3) == bits_of({0, 1, 2}, 3));

  PrefixBitset a21 = materialize(SetExpr::counterexample(), 21);
  PrefixBitset s = pair_sumset(a21, a21, 21);
  PrefixBitset expect(21);
  expect.set_range(0, 20);
  CHECK(s == expect);
  CHECK_FALSE(s.test(21));

  PrefixBitset q = materialize(SetExpr::powers(2), 500);
  CHECK(pair_sumset(bits_of({0}, 500), q, 500) == q);
  CHECK(pair_sumset(q, bits_of({0}, 500), 300) == q.truncated(300));
}

TEST_CASE("pair_sumset: bound mismatch") {
  try {
    pair_sumset(PrefixBitset(10), PrefixBitset(20), 15);
    FAIL("expected bound mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundMismatch);
  }
}

TEST_CASE("iterate_sumset: examples") {
  SetExpr cx = SetExpr::counterexample();
  CHECK(iterate_sumset(cx, 3, 100000).bits.all());

  SumsetResult two = iterate_sumset(cx, 2, 20001);
  CHECK_FALSE(two.bits.test(20001));
  CHECK(two.bits.test(20000));

  CHECK(iterate_sumset(SetExpr::powers(2), 4, 10000).bits.all());

  SumsetResult zero = iterate_sumset(cx, 0, 50);
  CHECK(zero.bits.count() == 1);
  CHECK(zero.bits.test(0));

  SumsetResult z7 = iterate_sumset(SetExpr::explicit_set({0}), 7, 5);
  CHECK(z7.bits == bits_of({0}, 5));
}

TEST_CASE("representation_count: examples") {
  CHECK(representation_count(SetExpr::explicit_set({0, 1}), 2, 1).count == 2);
  CHECK(representation_count(SetExpr::counterexample(), 2, 21).count == 0);
  // (0,25), (25,0), (9,16), (16,9)
  CHECK(representation_count(SetExpr::powers(2), 2, 25).count == 4);
  CHECK(representation_count(SetExpr::powers(2), 1, 25).count == 1);
  CHECK(representation_count(SetExpr::powers(2), 4, 7).count ==
        oracle::tuples({0, 1, 4}, 4, 7));
  CHECK_THROWS_AS(representation_count(SetExpr::powers(2), 0, 7), Error);
}

TEST_CASE("representation_count saturates instead of wrapping") {
  // interval[0,1000] has C(n+h-1, h-1) ordered h-tuples summing to n; for
  // h = 12, n = 1000 that is far beyond 2^64.
  RepresentationCount r = representation_count(SetExpr::interval(0, 1000), 12, 1000);
  CHECK(r.saturated);
  CHECK(r.count == ~Natural{0});
  CHECK_FALSE(representation_count(SetExpr::interval(0, 100), 3, 100).saturated);
  CHECK(representation_count(SetExpr::interval(0, 100), 3, 100).count == 5151);  // C(102, 2)
}

TEST_CASE("complement_witnesses: examples") {
  WitnessList w = complement_witnesses(SetExpr::counterexample(), 2, 2100);
  CHECK(std::find(w.gaps.begin(), w.gaps.end(), 21) != w.gaps.end());
  CHECK(std::find(w.gaps.begin(), w.gaps.end(), 201) != w.gaps.end());
  CHECK(w.gaps == std::vector<Natural>{21, 201, 2001});
  CHECK_FALSE(w.truncated);

  WitnessList sq = complement_witnesses(SetExpr::powers(2), 3, 100);
  // Brute force: the n <= 100 of the form 4^a(8b+7).
  CHECK(sq.gaps == std::vector<Natural>{7, 15, 23, 28, 31, 39, 47, 55, 60, 63, 71, 79, 87, 92, 95});

  CHECK(complement_witnesses(SetExpr::explicit_set({0, 1}), 5, 5).gaps.empty());

  WitnessList lim = complement_witnesses(SetExpr::powers(2), 3, 100, 4);
  CHECK(lim.gaps == std::vector<Natural>{7, 15, 23, 28});
  CHECK(lim.truncated);
  CHECK_THROWS_AS(complement_witnesses(SetExpr::powers(2), 3, 100, 0), Error);
}

TEST_CASE("property: truncation soundness against brute-force enumeration") {
  oracle::ExprGen gen(23);
  for (int i = 0; i < 50; ++i) {
    SetExpr e = gen.expr(2000);
    Natural bound = gen.uniform(0, 2000);
    unsigned h = static_cast<unsigned>(gen.uniform(0, 4));
    CAPTURE(e.to_string());
    CAPTURE(bound);
    CAPTURE(h);
    std::vector<bool> ref = oracle::sumset(oracle::prefix(e, bound), h);
    CHECK(equals_oracle(iterate_sumset(e, h, bound).bits, ref));
  }
}

TEST_CASE("property: monotone in h when 0 is a member") {
  oracle::ExprGen gen(29);
  for (int i = 0; i < 25; ++i) {
    SetExpr e = SetExpr::augment(gen.expr(1500), {0});
    PrefixBitset prev = iterate_sumset(e, 1, 1500).bits;
    for (unsigned h = 2; h <= 4; ++h) {
      PrefixBitset cur = iterate_sumset(e, h, 1500).bits;
      PrefixBitset both = cur;
      both |= prev;
      CHECK(both == cur);
      prev = std::move(cur);
    }
  }
}

TEST_CASE("property: fold associativity and square-and-multiply agree") {
  oracle::ExprGen gen(31);
  KernelOptions square;
  square.square_and_multiply = true;
  for (int i = 0; i < 25; ++i) {
    SetExpr e = gen.expr(3000);
    Natural bound = gen.uniform(100, 3000);
    PrefixBitset a = materialize(e, bound);
    PrefixBitset two = pair_sumset(a, a, bound);
    PrefixBitset three = pair_sumset(two, a, bound);
    PrefixBitset four_sq = pair_sumset(two, two, bound);
    PrefixBitset four_lin = pair_sumset(a, three, bound);
    CHECK(four_sq == four_lin);
    CHECK(iterate_sumset(a, 4).bits == four_lin);
    for (unsigned h = 0; h <= 7; ++h) CHECK(iterate_sumset(a, h, square).bits == iterate_sumset(a, h).bits);
  }
}

TEST_CASE("property: representation_count > 0 iff the sumset bit is set") {
  std::vector<SetExpr> exprs = {SetExpr::powers(2), SetExpr::powers(3), SetExpr::counterexample(),
                                parse_set_expr("explicit{3,7,50} | interval[100,120]"),
                                parse_set_expr("paperfamily(5,2,3,1) + {1}")};
  for (const SetExpr& e : exprs) {
    for (unsigned h = 1; h <= 3; ++h) {
      PrefixBitset s = iterate_sumset(e, h, 2000).bits;
      for (Natural n = 0; n <= 2000; n += (h == 3 ? 7 : 1)) {
        bool rep = representation_count(e, h, n).count > 0;
        if (rep != s.test(n)) FAIL(e.to_string(), " h=", h, " n=", n);
      }
    }
  }
}

TEST_CASE("representation_count matches explicit tuple enumeration") {
  oracle::ExprGen gen(37);
  for (int i = 0; i < 30; ++i) {
    SetExpr e = gen.expr(60);
    unsigned h = static_cast<unsigned>(gen.uniform(1, 3));
    Natural n = gen.uniform(0, 120);
    auto elems = oracle::elements(oracle::prefix(e, n));
    CHECK(representation_count(e, h, n).count == oracle::tuples(elems, h, n));
  }
}

TEST_CASE("property: parallel chunking is bit-identical to sequential") {
  oracle::ExprGen gen(41);
  for (int i = 0; i < 15; ++i) {
    SetExpr e = gen.expr(20000);
    Natural bound = gen.uniform(1000, 20000);
    PrefixBitset a = materialize(e, bound);
    PrefixBitset base = iterate_sumset(a, 3).bits;
    for (unsigned threads : {2U, 3U, 8U}) {
      for (std::size_t chunk : {std::size_t{1}, std::size_t{5}, std::size_t{64}}) {
        KernelOptions opts;
        opts.threads = threads;
        opts.chunk_runs = chunk;
        CHECK(iterate_sumset(a, 3, opts).bits == base);
      }
    }
  }
}
