#include "addbasis/report.hpp"

#include <cmath>
#include <sstream>

#include "addbasis/error.hpp"

namespace addbasis::report {

using nlohmann::json;

namespace {

json base_doc(const std::string& command, json inputs) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  return doc;
}

json runs_json(const std::vector<Run>& rs) {
  json out = json::array();
  for (const Run& r : rs) out.push_back({r.lo, r.hi});
  return out;
}

json density_json(const DensityReport& d) {
  json rows = json::array();
  for (const DensityRow& row : d.rows) {
    rows.push_back({{"k", row.k},
                    {"n", row.n},
                    {"count", row.ratio.num},
                    {"ratio", row.ratio.to_string()},
                    {"decimal", row.ratio.decimal()},
                    {"running_min", row.running_min.to_string()},
                    {"running_max", row.running_max.to_string()}});
  }
  json out{{"set", d.set_text}, {"t", d.t}, {"rows", rows}};
  if (auto m = d.min_ratio()) out["min_ratio"] = m->to_string();
  if (auto m = d.max_ratio()) out["max_ratio"] = m->to_string();
  return out;
}

void density_tables(Report& r, const DensityReport& d, const std::string& fold_label) {
  for (const DensityRow& row : d.rows) {
    std::vector<std::string> line{std::to_string(row.k), std::to_string(row.n), std::to_string(row.ratio.num),
                                  row.ratio.to_string(), json(row.ratio.decimal()).dump()};
    if (!fold_label.empty()) line.insert(line.begin(), fold_label);
    r.csv.rows.push_back(std::move(line));
    std::vector<std::string> plot{std::to_string(row.k), std::to_string(row.n), json(row.ratio.decimal()).dump()};
    if (!fold_label.empty()) plot.insert(plot.begin(), fold_label);
    r.plot.rows.push_back(std::move(plot));
  }
}

json subseq_json(const SubseqSpec& s) {
  return {{"formula", s.formula()}, {"start", s.start}, {"terms", s.terms}};
}

json extrema_json(const WindowExtrema& w, std::size_t tail, double spread_threshold) {
  return {{"tail", tail},
          {"min", w.min.to_string()},
          {"max", w.max.to_string()},
          {"spread", w.spread()},
          {"label", "empirical estimate"},
          {"limit_empirically_does_not_exist", w.spread() > spread_threshold}};
}

}  // namespace

// ---------------------------------------------------------------------------

Report sumset(const SetExpr& e, unsigned h, Natural bound, std::optional<std::size_t> limit,
              const KernelOptions& opts) {
  SumsetResult s = iterate_sumset(e, h, bound, opts);
  WitnessList w = complement_witnesses(s, limit);
  Report r;
  json inputs{{"set", e.to_string()}, {"h", h}, {"bound", bound}};
  if (limit) inputs["limit"] = *limit;
  r.doc = base_doc("sumset", inputs);
  std::vector<Run> member_runs = s.bits.runs();
  r.doc["member_count"] = s.bits.count();
  r.doc["member_runs"] = runs_json(member_runs);
  r.doc["gaps"] = w.gaps;
  r.doc["gaps_truncated"] = w.truncated;
  r.doc["covers_prefix"] = s.bits.all();
  r.csv.header = {"lo", "hi"};
  for (const Run& run : member_runs) r.csv.rows.push_back({std::to_string(run.lo), std::to_string(run.hi)});
  return r;
}

Report order(const SetExpr& e, Natural bound, unsigned h_max, const KernelOptions& opts) {
  OrderReport o = order_bounds(e, bound, h_max, opts);
  Report r;
  r.doc = base_doc("order", {{"set", o.set_text}, {"bound", bound}, {"hmax", h_max}});
  r.doc["zero_in_set"] = o.zero_in_set;
  r.doc["upper"] = o.upper ? json(*o.upper) : json(nullptr);
  r.doc["upper_label"] = o.upper ? "prefix-verified up to " + std::to_string(bound)
                                 : "none <= " + std::to_string(h_max);
  r.doc["lower"] = o.lower;
  r.doc["lower_certified"] = o.certified;
  r.doc["witness"] = o.certified ? json(o.witness) : json(nullptr);
  r.doc["witness_fold"] = o.lower - 1;
  r.doc["gap_counts"] = o.gap_counts;
  r.csv.header = {"h", "gaps"};
  for (std::size_t h = 0; h < o.gap_counts.size(); ++h)
    r.csv.rows.push_back({std::to_string(h), std::to_string(o.gap_counts[h])});
  return r;
}

Report density(const SetExpr& e, unsigned t, const SubseqSpec& subseq, const KernelOptions& opts) {
  DensityReport d = density_sequence(e, t, subseq, opts);
  Report r;
  r.doc = base_doc("density", {{"set", d.set_text}, {"t", t}, {"subseq", subseq_json(subseq)}});
  r.doc["density"] = density_json(d);
  r.csv.header = {"k", "n", "count", "ratio", "decimal"};
  r.plot.header = {"k", "n", "ratio"};
  density_tables(r, d, "");
  return r;
}

Report stability(const SetExpr& e, std::vector<Natural> augmentation, unsigned h, const SubseqSpec& family,
                 Natural bound, const KernelOptions& opts) {
  StabilityReport s = stability_probe(e, std::move(augmentation), h, family, bound, opts);
  Report r;
  r.doc = base_doc("stability", {{"set", s.set_text},
                                 {"add", s.augmentation},
                                 {"h", h},
                                 {"bound", bound},
                                 {"family", subseq_json(family)}});
  json verdicts = json::array();
  for (const auto& v : s.verdicts) verdicts.push_back({{"n", v.n}, {"in_sumset", v.in_sumset}});
  r.doc["probe_fold"] = s.probe_fold;
  r.doc["verdicts"] = verdicts;
  r.doc["survivors"] = s.survivors;
  r.doc["conclusion"] = s.conclusion.empty() ? json(nullptr) : json(s.conclusion);
  r.csv.header = {"n", "in_sumset"};
  for (const auto& v : s.verdicts) r.csv.rows.push_back({std::to_string(v.n), v.in_sumset ? "1" : "0"});
  return r;
}

Report stability_sweep(const SetExpr& e, unsigned h, const SubseqSpec& family, Natural bound,
                       const SweepOptions& sweep, const KernelOptions& opts) {
  SweepReport s = addbasis::stability_sweep(e, h, family, bound, sweep, opts);
  Report r;
  r.doc = base_doc("stability", {{"set", e.to_string()},
                                 {"h", h},
                                 {"bound", bound},
                                 {"family", subseq_json(family)},
                                 {"sweep", {{"runs", sweep.runs},
                                            {"seed", sweep.seed},
                                            {"f_max", sweep.f_max},
                                            {"f_max_size", sweep.f_max_size}}}});
  json runs = json::array();
  r.csv.header = {"run", "augmentation", "survivors"};
  for (std::size_t i = 0; i < s.runs.size(); ++i) {
    runs.push_back({{"add", s.runs[i].augmentation}, {"survivors", s.runs[i].survivors}});
    auto join = [](const std::vector<Natural>& v) {
      std::string out;
      for (std::size_t j = 0; j < v.size(); ++j) out += (j ? " " : "") + std::to_string(v[j]);
      return out;
    };
    r.csv.rows.push_back({std::to_string(i), join(s.runs[i].augmentation), join(s.runs[i].survivors)});
  }
  r.doc["probe_fold"] = h - 1;
  r.doc["family_terms"] = s.family_terms;
  r.doc["runs"] = runs;
  r.doc["all_survived"] = s.all_survived;
  return r;
}

Report probe(const SetExpr& e, unsigned h, const SubseqSpec& subseq, const ProbeSettings& settings,
             const KernelOptions& opts) {
  HypothesisReport p = hypothesis_probe(e, h, subseq, settings.h2_threshold, opts);
  Report r;
  r.doc = base_doc("probe", {{"set", e.to_string()}, {"h", h}, {"subseq", subseq_json(subseq)}});
  r.doc["lower_fold"] = density_json(p.lower_fold);
  r.doc["upper_fold"] = density_json(p.upper_fold);
  r.doc["verdict"] = {{"label", "empirical indicator at this window, not conclusive"},
                      {"h2_threshold", p.h2_threshold},
                      {"h2_ratio_trending_to_zero", p.h2_ratio_trending_to_zero},
                      {"h2_tail_max", p.h2_tail_max},
                      {"h1_ratio_max", p.h1_ratio_max},
                      {"h1_strictly_below_one", p.h1_strictly_below_one}};
  r.csv.header = {"fold", "k", "n", "count", "ratio", "decimal"};
  r.plot.header = {"fold", "k", "n", "ratio"};
  density_tables(r, p.lower_fold, std::to_string(h - 2));
  density_tables(r, p.upper_fold, std::to_string(h - 1));
  return r;
}

// ---------------------------------------------------------------------------

Report verify_counterexample(Natural bound, std::uint64_t seed, const KernelOptions& opts) {
  if (bound < kVerifyMinBound)
    throw Error(ErrorKind::Precondition, "bound " + std::to_string(bound) + " is below the minimum " +
                                             std::to_string(kVerifyMinBound));
  const SetExpr cx = SetExpr::counterexample();
  constexpr double kDensityTolerance = 1e-3;
  constexpr double kSpreadThreshold = 0.4;

  // Largest k with 2*10^k+1 <= bound, and with 10^k <= bound.
  unsigned k_witness = 0, k_power = 0;
  for (Natural p = 10; 2 * p + 1 <= bound; p *= 10) ++k_witness;
  for (Natural p = 10; p <= bound; p *= 10) ++k_power;

  Report r;
  r.doc = base_doc("verify-counterexample", {{"set", cx.to_string()}, {"bound", bound}, {"seed", seed}});
  json claims = json::object();
  r.csv.header = {"claim", "status"};
  r.plot.header = {"subsequence", "k", "n", "ratio"};
  auto record = [&](const std::string& name, bool ok, json detail) {
    detail["status"] = ok ? "PASS" : "FAIL";
    claims[name] = std::move(detail);
    r.csv.rows.push_back({name, ok ? "PASS" : "FAIL"});
    r.passed = r.passed && ok;
  };

  // 1. order 3, certified by 21 ∉ 2A
  OrderReport o = order_bounds(cx, bound, 5, opts);
  record("order",
         o.upper == 3u && o.lower == 3 && o.witness == 21,
         {{"upper", o.upper ? json(*o.upper) : json(nullptr)},
          {"lower", o.lower},
          {"witness", o.witness},
          {"upper_label", "prefix-verified up to " + std::to_string(bound)}});

  // 2. every 2*10^k+1 in range is a gap of 2A
  WitnessList gaps = complement_witnesses(cx, 2, bound, std::nullopt, opts);
  SubseqSpec witness_family = parse_subseq("2*10^k+1", 1, k_witness);
  std::vector<Natural> expected = witness_family.generate();
  bool all_present = true;
  for (Natural n : expected)
    all_present = all_present && std::binary_search(gaps.gaps.begin(), gaps.gaps.end(), n);
  json first_gaps = json::array();
  for (std::size_t i = 0; i < gaps.gaps.size() && i < 16; ++i) first_gaps.push_back(gaps.gaps[i]);
  record("gap_witnesses", all_present,
         {{"family", witness_family.formula()}, {"expected", expected}, {"gap_count", gaps.gaps.size()},
          {"first_gaps", first_gaps}});

  // 3. the two density subsequences approach 4/9 and 8/9
  DensityReport low = density_sequence(cx, 1, witness_family, opts);
  DensityReport high = density_sequence(cx, 1, parse_subseq("10^k", 1, k_power), opts);
  double low_err = std::fabs(low.rows.back().ratio.decimal() - 4.0 / 9.0);
  double high_err = std::fabs(high.rows.back().ratio.decimal() - 8.0 / 9.0);
  record("density_subsequences", low_err < kDensityTolerance && high_err < kDensityTolerance,
         {{"liminf_rows", density_json(low)},
          {"limsup_rows", density_json(high)},
          {"liminf_target", "4/9"},
          {"limsup_target", "8/9"},
          {"liminf_error", low_err},
          {"limsup_error", high_err},
          {"tolerance", kDensityTolerance}});
  for (const auto& row : low.rows)
    r.plot.rows.push_back({"2*10^k+1", std::to_string(row.k), std::to_string(row.n), json(row.ratio.decimal()).dump()});
  for (const auto& row : high.rows)
    r.plot.rows.push_back({"10^k", std::to_string(row.k), std::to_string(row.n), json(row.ratio.decimal()).dump()});

  // 4. merged tails disagree: the limit does not exist at this window
  DensityReport merged = merge_reports(low, high);
  std::size_t tail = std::min<std::size_t>(4, merged.rows.size());
  WindowExtrema w = window_extrema(merged, tail);
  record("non_convergence", w.spread() > kSpreadThreshold, extrema_json(w, tail, kSpreadThreshold));

  // 5. random finite augmentations never close the witness family in 2(A ∪ F)
  SweepOptions sweep;
  sweep.seed = seed;
  SubseqSpec sweep_family = parse_subseq("2*10^k+1", 3, k_witness - 2);
  SweepReport s = addbasis::stability_sweep(cx, 3, sweep_family, bound, sweep, opts);
  record("stability_sweep", s.all_survived,
         {{"runs", s.runs.size()},
          {"seed", seed},
          {"family_terms", s.family_terms},
          {"f_range", {0, sweep.f_max}},
          {"f_max_size", sweep.f_max_size}});

  r.doc["claims"] = claims;
  r.doc["passed"] = r.passed;
  return r;
}

// ---------------------------------------------------------------------------

std::string render_json(const Report& r) {
  json doc = r.doc;
  doc["timing_ms"] = r.timing_ms;
  return doc.dump(2) + "\n";
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      if (cells[i].find_first_of(",\"") != std::string::npos)
        out << '"' << cells[i] << '"';
      else
        out << cells[i];
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Precondition, "report schema: " + what);
}

void require_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  require(obj.is_object(), where + " is not an object");
  for (const char* k : keys) require(obj.contains(k), where + " lacks '" + k + "'");
}

void validate_ratio(const json& v, const std::string& where) {
  require(v.is_string(), where + " is not a p/q string");
  const std::string s = v.get<std::string>();
  auto slash = s.find('/');
  require(slash != std::string::npos && slash > 0 && slash + 1 < s.size() &&
              s.find_first_not_of("0123456789/") == std::string::npos,
          where + " is not a p/q string");
}

void validate_density(const json& d, const std::string& where) {
  require_keys(d, {"set", "t", "rows"}, where);
  require(d["rows"].is_array(), where + ".rows is not an array");
  for (const auto& row : d["rows"]) {
    require_keys(row, {"k", "n", "count", "ratio", "decimal", "running_min", "running_max"}, where + ".rows[]");
    validate_ratio(row["ratio"], where + ".rows[].ratio");
    double dec = row["decimal"].get<double>();
    require(dec >= 0.0 && dec <= 1.0, where + ".rows[].decimal out of [0,1]");
  }
}

}  // namespace

void validate(const json& doc) {
  require_keys(doc, {"schema_version", "command", "inputs", "timing_ms"}, "report");
  require(doc["schema_version"] == kSchemaVersion, "unknown schema_version");
  require(doc["inputs"].is_object(), "inputs is not an object");
  require(doc["timing_ms"].is_number(), "timing_ms is not a number");
  const std::string cmd = doc["command"].get<std::string>();
  if (cmd == "sumset") {
    require_keys(doc, {"member_count", "member_runs", "gaps", "gaps_truncated", "covers_prefix"}, "sumset");
  } else if (cmd == "order") {
    require_keys(doc, {"zero_in_set", "upper", "upper_label", "lower", "lower_certified", "witness", "gap_counts"},
                 "order");
  } else if (cmd == "density") {
    require_keys(doc, {"density"}, "density");
    validate_density(doc["density"], "density");
  } else if (cmd == "stability") {
    if (doc["inputs"].contains("sweep"))
      require_keys(doc, {"probe_fold", "family_terms", "runs", "all_survived"}, "stability sweep");
    else
      require_keys(doc, {"probe_fold", "verdicts", "survivors", "conclusion"}, "stability");
  } else if (cmd == "probe") {
    require_keys(doc, {"lower_fold", "upper_fold", "verdict"}, "probe");
    validate_density(doc["lower_fold"], "lower_fold");
    validate_density(doc["upper_fold"], "upper_fold");
    require_keys(doc["verdict"],
                 {"h2_ratio_trending_to_zero", "h2_tail_max", "h1_ratio_max", "h1_strictly_below_one"}, "verdict");
  } else if (cmd == "verify-counterexample") {
    require_keys(doc, {"claims", "passed"}, "verify-counterexample");
    for (const char* claim : {"order", "gap_witnesses", "density_subsequences", "non_convergence", "stability_sweep"}) {
      require(doc["claims"].contains(claim), std::string("missing claim '") + claim + "'");
      require(doc["claims"][claim]["status"] == "PASS" || doc["claims"][claim]["status"] == "FAIL",
              std::string("claim '") + claim + "' has no PASS/FAIL status");
    }
  } else {
    require(false, "unknown command '" + cmd + "'");
  }
}

}  // namespace addbasis::report
