#include "addbasis/sumset.hpp"

#include <algorithm>
#include <thread>

#include "addbasis/error.hpp"

namespace addbasis {

namespace {

using Word = PrefixBitset::Word;

// OR of src shifted by 0..len-1, computed by doubling: after step j the
// buffer holds the OR over shifts [0, covered).
PrefixBitset dilate(const PrefixBitset& src, Natural len) {
  PrefixBitset acc = src;
  Natural covered = 1;
  while (covered < len) {
    Natural step = std::min(covered, len - covered);
    PrefixBitset shifted = acc;
    PrefixBitset::shift_or(shifted.words(), acc.words(), step);
    shifted.clear_tail();
    acc = std::move(shifted);
    covered += step;
  }
  return acc;
}

void apply_runs(PrefixBitset& dst, const PrefixBitset& other, std::span<const Run> runs) {
  for (const Run& r : runs) {
    if (r.lo > dst.bound()) break;
    Natural len = std::min(r.hi, dst.bound()) - r.lo + 1;
    if (len == 1) {
      PrefixBitset::shift_or(dst.words(), other.words(), r.lo);
    } else {
      PrefixBitset spread = dilate(other, len);
      PrefixBitset::shift_or(dst.words(), spread.words(), r.lo);
    }
  }
  dst.clear_tail();
}

}  // namespace

PrefixBitset pair_sumset(const PrefixBitset& p, const PrefixBitset& q, Natural bound, const KernelOptions& opts) {
  if (p.bound() < bound || q.bound() < bound)
    throw Error(ErrorKind::BoundMismatch, "sumset bound " + std::to_string(bound) + " exceeds operand bounds " +
                                              std::to_string(p.bound()) + " / " + std::to_string(q.bound()));
  PrefixBitset pt = p.bound() == bound ? p : p.truncated(bound);
  PrefixBitset qt = q.bound() == bound ? q : q.truncated(bound);

  // Iterate over the operand with fewer runs; ties go to the left operand.
  std::vector<Run> prun = pt.runs();
  std::vector<Run> qrun = qt.runs();
  bool left = prun.size() <= qrun.size();
  const std::vector<Run>& driver = left ? prun : qrun;
  const PrefixBitset& other = left ? qt : pt;

  PrefixBitset out(bound);
  std::size_t chunk = std::max<std::size_t>(opts.chunk_runs, 1);
  std::size_t nchunks = (driver.size() + chunk - 1) / chunk;
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(opts.threads, 1U), nchunks));
  if (workers <= 1) {
    apply_runs(out, other, driver);
    return out;
  }

  // Worker w takes chunks w, w+workers, ...; partial results are OR-reduced
  // in worker order, which is bit-identical to sequential evaluation.
  std::vector<PrefixBitset> partial(workers, PrefixBitset(bound));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < nchunks; c += workers) {
          std::size_t begin = c * chunk;
          std::size_t end = std::min(begin + chunk, driver.size());
          apply_runs(partial[w], other, std::span<const Run>(driver).subspan(begin, end - begin));
        }
      });
    }
  }
  for (const auto& part : partial) out |= part;
  return out;
}

SumsetResult iterate_sumset(const PrefixBitset& a, unsigned h, const KernelOptions& opts) {
  Natural bound = a.bound();
  PrefixBitset zero(bound);
  zero.set(0);
  if (h == 0) return {0, std::move(zero)};
  if (!opts.square_and_multiply) {
    PrefixBitset acc = a;
    for (unsigned i = 1; i < h; ++i) acc = pair_sumset(acc, a, bound, opts);
    return {h, std::move(acc)};
  }
  std::optional<PrefixBitset> result;
  PrefixBitset power = a;
  for (unsigned rest = h;;) {
    if (rest & 1U) result = result ? pair_sumset(*result, power, bound, opts) : power;
    rest >>= 1U;
    if (!rest) break;
    power = pair_sumset(power, power, bound, opts);
  }
  return {h, std::move(*result)};
}

SumsetResult iterate_sumset(const SetExpr& e, unsigned h, Natural bound, const KernelOptions& opts) {
  return iterate_sumset(materialize(e, bound, opts.max_bound), h, opts);
}

RepresentationCount representation_count(const SetExpr& e, unsigned h, Natural n, Natural max_bound) {
  if (h < 1) throw Error(ErrorKind::Precondition, "representation count needs h >= 1");
  if (n > max_bound) throw Error(ErrorKind::BoundCeiling, "representation target exceeds the memory ceiling");

  std::vector<Natural> elems;
  for (const Run& r : runs(e, 0, n))
    for (Natural x = r.lo;; ++x) {
      elems.push_back(x);
      if (x == r.hi) break;
    }

  bool saturated = false;
  auto sat_add = [&](Natural& acc, Natural v) {
    if (__builtin_add_overflow(acc, v, &acc)) {
      acc = ~Natural{0};
      saturated = true;
    }
  };

  // ways[x] = ordered (j)-tuples summing to x, for x <= n.
  std::vector<Natural> ways(n + 1, 0);
  for (Natural a : elems) ways[a] = 1;
  for (unsigned j = 2; j < h; ++j) {
    std::vector<Natural> next(n + 1, 0);
    for (Natural x = 0; x <= n; ++x) {
      if (!ways[x]) continue;
      for (Natural a : elems) {
        if (a > n - x) break;
        sat_add(next[x + a], ways[x]);
      }
    }
    ways = std::move(next);
  }
  if (h == 1) return {ways[n], false};
  Natural total = 0;
  for (Natural a : elems) sat_add(total, ways[n - a]);
  return {total, saturated};
}

WitnessList complement_witnesses(const SumsetResult& s, std::optional<std::size_t> limit) {
  if (limit && *limit < 1) throw Error(ErrorKind::Precondition, "witness limit must be >= 1");
  WitnessList out{s.h, s.bound(), {}, false};
  Natural pos = 0;
  while (auto gap = s.bits.next_clear(pos)) {
    if (limit && out.gaps.size() == *limit) {
      out.truncated = true;
      break;
    }
    out.gaps.push_back(*gap);
    pos = *gap + 1;
  }
  return out;
}

WitnessList complement_witnesses(const SetExpr& e, unsigned h, Natural bound, std::optional<std::size_t> limit,
                                 const KernelOptions& opts) {
  return complement_witnesses(iterate_sumset(e, h, bound, opts), limit);
}

}  // namespace addbasis
