#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "addbasis/analysis.hpp"
#include "addbasis/order.hpp"
#include "addbasis/setspec.hpp"
#include "addbasis/sumset.hpp"

namespace addbasis::report {

inline constexpr const char* kSchemaVersion = "addbasis.report/1";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// A rendered command result. `doc` holds everything except timing_ms,
// which is attached at render time so the rest stays byte-stable.
struct Report {
  nlohmann::json doc;
  Table csv;
  Table plot;
  bool passed = true;
  double timing_ms = 0.0;
};

struct ProbeSettings {
  double h2_threshold = 0.01;
};

Report sumset(const SetExpr& e, unsigned h, Natural bound, std::optional<std::size_t> limit, const KernelOptions& opts);
Report order(const SetExpr& e, Natural bound, unsigned h_max, const KernelOptions& opts);
Report density(const SetExpr& e, unsigned t, const SubseqSpec& subseq, const KernelOptions& opts);
Report stability(const SetExpr& e, std::vector<Natural> augmentation, unsigned h, const SubseqSpec& family,
                 Natural bound, const KernelOptions& opts);
Report stability_sweep(const SetExpr& e, unsigned h, const SubseqSpec& family, Natural bound,
                       const SweepOptions& sweep, const KernelOptions& opts);
Report probe(const SetExpr& e, unsigned h, const SubseqSpec& subseq, const ProbeSettings& settings,
             const KernelOptions& opts);

/// Smallest bound accepted by verify_counterexample: two witness terms and density rows.
inline constexpr Natural kVerifyMinBound = 21000;

/// End-to-end check of the counterexample family built from the public
/// operations above; `passed` is false when any claim fails.
Report verify_counterexample(Natural bound, std::uint64_t seed, const KernelOptions& opts);

std::string render_json(const Report& r);
std::string render_csv(const Table& t);

/// Throws Error(Precondition) describing the first schema violation.
void validate(const nlohmann::json& doc);

}  // namespace addbasis::report
