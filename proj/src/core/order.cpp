#include "addbasis/order.hpp"

#include <algorithm>
#include <random>

#include "addbasis/error.hpp"

namespace addbasis {

namespace {

void verify_gap(const SetExpr& e, unsigned fold, Natural n, Natural max_bound) {
  bool absent = fold == 0 ? n != 0 : representation_count(e, fold, n, max_bound).count == 0;
  if (!absent)
    throw Error(ErrorKind::Verification, "certificate " + std::to_string(n) + " has a representation in " +
                                             std::to_string(fold) + "-fold sums of " + e.to_string());
}

}  // namespace

OrderReport order_bounds(const SetExpr& e, Natural bound, unsigned h_max, const KernelOptions& opts,
                         bool verify_certificate) {
  if (h_max < 1) throw Error(ErrorKind::Precondition, "h_max must be >= 1");
  PrefixBitset a = materialize(e, bound, opts.max_bound);

  OrderReport r{e.to_string(), bound, h_max, a.test(0), std::nullopt, 0, 0, true, {}};

  // sums holds hA; start from 0A = {0}.
  PrefixBitset sums(bound);
  sums.set(0);
  std::optional<Natural> last_gap = sums.next_clear(0);
  unsigned last_gap_fold = 0;
  r.gap_counts.push_back(bound + 1 - sums.count());

  for (unsigned h = 1; h <= h_max; ++h) {
    sums = h == 1 ? a : pair_sumset(sums, a, bound, opts);
    r.gap_counts.push_back(bound + 1 - sums.count());
    if (auto gap = sums.next_clear(0)) {
      last_gap = gap;
      last_gap_fold = h;
    } else {
      r.upper = h;
      break;
    }
  }

  if (!last_gap) {
    // bound == 0: 0A = {0} already covers the window, so no gap certifies anything beyond h >= 1.
    r.lower = 1;
    r.certified = false;
    return r;
  }
  r.lower = last_gap_fold + 1;
  r.witness = *last_gap;
  if (verify_certificate) verify_gap(e, last_gap_fold, r.witness, opts.max_bound);
  return r;
}

StabilityReport stability_probe(const SetExpr& e, std::vector<Natural> augmentation, unsigned h,
                                const SubseqSpec& family, Natural bound, const KernelOptions& opts,
                                bool verify_survivors) {
  if (h < 2) throw Error(ErrorKind::Precondition, "stability probe needs h >= 2");
  std::vector<Natural> terms = family.generate();
  for (Natural n : terms)
    if (n > bound)
      throw Error(ErrorKind::Precondition,
                  "family term " + std::to_string(n) + " exceeds bound " + std::to_string(bound));

  SetExpr augmented = SetExpr::augment(e, std::move(augmentation));
  const auto& extra = std::get<expr::Augment>(augmented.node()).extra;
  StabilityReport r{e.to_string(), extra, h - 1, family.formula(), bound, {}, {}, {}};
  if (terms.empty()) return r;

  // Truncation soundness: the largest family term is enough of a prefix.
  SumsetResult sums = iterate_sumset(augmented, h - 1, terms.back(), opts);
  for (Natural n : terms) {
    bool in = sums.bits.test(n);
    r.verdicts.push_back({n, in});
    if (!in) {
      if (verify_survivors) verify_gap(augmented, h - 1, n, opts.max_bound);
      r.survivors.push_back(n);
    }
  }
  if (!r.survivors.empty())
    r.conclusion = "order-" + std::to_string(h - 1) + " ruled out up to " + std::to_string(bound);
  return r;
}

SweepReport stability_sweep(const SetExpr& e, unsigned h, const SubseqSpec& family, Natural bound,
                            const SweepOptions& sweep, const KernelOptions& opts) {
  SweepReport report{sweep.seed, family.generate(), {}, true};
  std::mt19937_64 rng(sweep.seed);
  std::uniform_int_distribution<std::size_t> size_dist(0, sweep.f_max_size);
  std::uniform_int_distribution<Natural> elem_dist(0, sweep.f_max);
  for (std::size_t i = 0; i < sweep.runs; ++i) {
    std::vector<Natural> f(size_dist(rng));
    for (auto& x : f) x = elem_dist(rng);
    // Survivors are certified through the DP only for 2-fold probes, where it is linear.
    StabilityReport probe = stability_probe(e, f, h, family, bound, opts, h - 1 <= 2);
    if (probe.survivors.size() != report.family_terms.size()) report.all_survived = false;
    report.runs.push_back({probe.augmentation, probe.survivors});
  }
  return report;
}

}  // namespace addbasis
