#include "addbasis/addbasis.h"

#include <chrono>
#include <cstring>
#include <new>
#include <string>

#include "addbasis/error.hpp"
#include "addbasis/report.hpp"

struct ab_context {
  addbasis::KernelOptions kernel;
  addbasis::report::ProbeSettings probe;
};

struct ab_set {
  addbasis::SetExpr expr;
};

struct ab_bits {
  addbasis::PrefixBitset bits;
};

struct ab_report {
  addbasis::report::Report report;
};

namespace {

thread_local std::string g_message;
thread_local int64_t g_offset = -1;

ab_status map_kind(addbasis::ErrorKind kind) {
  using addbasis::ErrorKind;
  switch (kind) {
    case ErrorKind::Syntax: return AB_ERR_SYNTAX;
    case ErrorKind::Semantic: return AB_ERR_SEMANTIC;
    case ErrorKind::Overflow: return AB_ERR_OVERFLOW;
    case ErrorKind::BoundCeiling: return AB_ERR_BOUND_CEILING;
    case ErrorKind::BoundMismatch: return AB_ERR_BOUND_MISMATCH;
    case ErrorKind::Precondition: return AB_ERR_PRECONDITION;
    case ErrorKind::Verification: return AB_ERR_VERIFICATION;
  }
  return AB_ERR_INTERNAL;
}

ab_status fail(ab_status status, std::string message) {
  g_message = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
ab_status guarded(F&& body) {
  g_message.clear();
  g_offset = -1;
  try {
    body();
    return AB_OK;
  } catch (const addbasis::SyntaxError& e) {
    g_offset = static_cast<int64_t>(e.offset());
    return fail(AB_ERR_SYNTAX, e.what());
  } catch (const addbasis::Error& e) {
    return fail(map_kind(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(AB_ERR_PRECONDITION, std::string("report schema: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(AB_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::length_error& e) {
    return fail(AB_ERR_OUT_OF_MEMORY, e.what());
  } catch (const std::exception& e) {
    return fail(AB_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const addbasis::KernelOptions& kernel_of(const ab_context* ctx) {
  static const addbasis::KernelOptions defaults;
  return ctx ? ctx->kernel : defaults;
}

template <class F>
ab_status produce_report(ab_report** out, F&& make) {
  if (!out) return fail(AB_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    auto start = std::chrono::steady_clock::now();
    addbasis::report::Report r = make();
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    *out = new ab_report{std::move(r)};
  });
}

}  // namespace

extern "C" {

const char* ab_version(void) { return "1.0.0"; }

const char* ab_status_name(ab_status status) {
  switch (status) {
    case AB_OK: return "ok";
    case AB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AB_ERR_SYNTAX: return "syntax error";
    case AB_ERR_SEMANTIC: return "semantic error";
    case AB_ERR_OVERFLOW: return "overflow";
    case AB_ERR_BOUND_CEILING: return "bound exceeds memory ceiling";
    case AB_ERR_BOUND_MISMATCH: return "bound mismatch";
    case AB_ERR_PRECONDITION: return "precondition violated";
    case AB_ERR_VERIFICATION: return "verification failed";
    case AB_ERR_OUT_OF_MEMORY: return "out of memory";
    case AB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ab_last_error_message(void) { return g_message.c_str(); }
int64_t ab_last_error_offset(void) { return g_offset; }
void ab_string_free(char* s) { std::free(s); }

ab_status ab_parse_natural(const char* text, uint64_t* out) {
  if (!text || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = addbasis::parse_natural(text); });
}

// ---- context

ab_status ab_context_create(ab_context** out) {
  if (!out) return fail(AB_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = new ab_context{}; });
}

void ab_context_destroy(ab_context* ctx) { delete ctx; }

ab_status ab_context_set_max_bound(ab_context* ctx, uint64_t max_bound) {
  if (!ctx) return fail(AB_ERR_INVALID_ARGUMENT, "null context");
  ctx->kernel.max_bound = max_bound;
  return AB_OK;
}

uint64_t ab_context_max_bound(const ab_context* ctx) { return kernel_of(ctx).max_bound; }

ab_status ab_context_set_threads(ab_context* ctx, unsigned threads) {
  if (!ctx) return fail(AB_ERR_INVALID_ARGUMENT, "null context");
  if (threads == 0) return fail(AB_ERR_PRECONDITION, "thread count must be >= 1");
  ctx->kernel.threads = threads;
  return AB_OK;
}

ab_status ab_context_set_square_and_multiply(ab_context* ctx, int enabled) {
  if (!ctx) return fail(AB_ERR_INVALID_ARGUMENT, "null context");
  ctx->kernel.square_and_multiply = enabled != 0;
  return AB_OK;
}

ab_status ab_context_set_h2_threshold(ab_context* ctx, double threshold) {
  if (!ctx) return fail(AB_ERR_INVALID_ARGUMENT, "null context");
  if (!(threshold > 0.0 && threshold <= 1.0)) return fail(AB_ERR_PRECONDITION, "h2 threshold must lie in (0, 1]");
  ctx->probe.h2_threshold = threshold;
  return AB_OK;
}

// ---- sets

ab_status ab_set_parse(const char* text, ab_set** out) {
  if (!text || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new ab_set{addbasis::parse_set_expr(text)}; });
}

void ab_set_destroy(ab_set* set) { delete set; }

ab_status ab_set_to_string(const ab_set* set, char** out) {
  if (!set || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(set->expr.to_string()); });
}

ab_status ab_set_contains(const ab_set* set, uint64_t n, int* out) {
  if (!set || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = addbasis::contains(set->expr, n) ? 1 : 0; });
}

ab_status ab_set_counting(const ab_set* set, uint64_t n, uint64_t* out) {
  if (!set || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = addbasis::counting(set->expr, n); });
}

ab_status ab_family_block(const ab_set* set, unsigned index, uint64_t* lo, uint64_t* hi) {
  if (!set || !lo || !hi) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  const auto* family = std::get_if<addbasis::expr::PaperFamily>(&set->expr.node());
  if (!family) return fail(AB_ERR_PRECONDITION, "set is not a paperfamily expression");
  return guarded([&] {
    addbasis::FamilyBlock b = addbasis::family_block(*family, index);
    *lo = b.lo;
    *hi = b.hi;
  });
}

// ---- bitsets

ab_status ab_materialize(const ab_context* ctx, const ab_set* set, uint64_t bound, ab_bits** out) {
  if (!set || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new ab_bits{addbasis::materialize(set->expr, bound, kernel_of(ctx).max_bound)}; });
}

ab_status ab_sumset(const ab_context* ctx, const ab_set* set, unsigned h, uint64_t bound, ab_bits** out) {
  if (!set || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new ab_bits{addbasis::iterate_sumset(set->expr, h, bound, kernel_of(ctx)).bits}; });
}

ab_status ab_pair_sumset(const ab_context* ctx, const ab_bits* p, const ab_bits* q, uint64_t bound, ab_bits** out) {
  if (!p || !q || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new ab_bits{addbasis::pair_sumset(p->bits, q->bits, bound, kernel_of(ctx))}; });
}

void ab_bits_destroy(ab_bits* bits) { delete bits; }
uint64_t ab_bits_bound(const ab_bits* bits) { return bits ? bits->bits.bound() : 0; }
int ab_bits_test(const ab_bits* bits, uint64_t i) { return bits && bits->bits.test(i) ? 1 : 0; }
uint64_t ab_bits_count(const ab_bits* bits) { return bits ? bits->bits.count() : 0; }
int ab_bits_equal(const ab_bits* a, const ab_bits* b) { return a && b && a->bits == b->bits ? 1 : 0; }

ab_status ab_representation_count(const ab_context* ctx, const ab_set* set, unsigned h, uint64_t n, uint64_t* count,
                                  int* saturated) {
  if (!set || !count) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = addbasis::representation_count(set->expr, h, n, kernel_of(ctx).max_bound);
    *count = r.count;
    if (saturated) *saturated = r.saturated ? 1 : 0;
  });
}

// ---- reports

ab_status ab_report_sumset(const ab_context* ctx, const ab_set* set, unsigned h, uint64_t bound, uint64_t limit,
                           ab_report** out) {
  if (!set) return fail(AB_ERR_INVALID_ARGUMENT, "null set");
  return produce_report(out, [&] {
    std::optional<std::size_t> lim;
    if (limit) lim = static_cast<std::size_t>(limit);
    return addbasis::report::sumset(set->expr, h, bound, lim, kernel_of(ctx));
  });
}

ab_status ab_report_order(const ab_context* ctx, const ab_set* set, uint64_t bound, unsigned h_max, ab_report** out) {
  if (!set) return fail(AB_ERR_INVALID_ARGUMENT, "null set");
  return produce_report(out, [&] { return addbasis::report::order(set->expr, bound, h_max, kernel_of(ctx)); });
}

ab_status ab_report_density(const ab_context* ctx, const ab_set* set, unsigned t, const char* subseq, unsigned start,
                            unsigned terms, ab_report** out) {
  if (!set || !subseq) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return produce_report(out, [&] {
    return addbasis::report::density(set->expr, t, addbasis::parse_subseq(subseq, start, terms), kernel_of(ctx));
  });
}

ab_status ab_report_stability(const ab_context* ctx, const ab_set* set, const uint64_t* add, size_t add_len,
                              unsigned h, const char* family, unsigned start, unsigned terms, uint64_t bound,
                              ab_report** out) {
  if (!set || !family || (add_len && !add)) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return produce_report(out, [&] {
    std::vector<addbasis::Natural> f(add, add + add_len);
    return addbasis::report::stability(set->expr, std::move(f), h, addbasis::parse_subseq(family, start, terms),
                                       bound, kernel_of(ctx));
  });
}

ab_status ab_report_stability_sweep(const ab_context* ctx, const ab_set* set, unsigned h, const char* family,
                                    unsigned start, unsigned terms, uint64_t bound, size_t runs, uint64_t seed,
                                    ab_report** out) {
  if (!set || !family) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return produce_report(out, [&] {
    addbasis::SweepOptions sweep;
    sweep.runs = runs;
    sweep.seed = seed;
    return addbasis::report::stability_sweep(set->expr, h, addbasis::parse_subseq(family, start, terms), bound, sweep,
                                             kernel_of(ctx));
  });
}

ab_status ab_report_probe(const ab_context* ctx, const ab_set* set, unsigned h, const char* subseq, unsigned start,
                          unsigned terms, ab_report** out) {
  if (!set || !subseq) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return produce_report(out, [&] {
    addbasis::report::ProbeSettings settings = ctx ? ctx->probe : addbasis::report::ProbeSettings{};
    return addbasis::report::probe(set->expr, h, addbasis::parse_subseq(subseq, start, terms), settings,
                                   kernel_of(ctx));
  });
}

ab_status ab_report_verify_counterexample(const ab_context* ctx, uint64_t bound, uint64_t seed, ab_report** out) {
  return produce_report(out, [&] { return addbasis::report::verify_counterexample(bound, seed, kernel_of(ctx)); });
}

void ab_report_destroy(ab_report* report) { delete report; }

ab_status ab_report_render(const ab_report* report, ab_format format, char** out) {
  if (!report || !out) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& r = report->report;
    switch (format) {
      case AB_FORMAT_JSON: *out = dup_string(addbasis::report::render_json(r)); return;
      case AB_FORMAT_CSV: *out = dup_string(addbasis::report::render_csv(r.csv)); return;
      case AB_FORMAT_PLOT_DATA:
        if (r.plot.header.empty())
          throw addbasis::Error(addbasis::ErrorKind::Precondition, "this command has no plot data");
        *out = dup_string(addbasis::report::render_csv(r.plot));
        return;
    }
    throw addbasis::Error(addbasis::ErrorKind::Precondition, "unknown output format");
  });
}

int ab_report_passed(const ab_report* report) { return report && report->report.passed ? 1 : 0; }
double ab_report_timing_ms(const ab_report* report) { return report ? report->report.timing_ms : 0.0; }

ab_status ab_report_validate(const char* json_text) {
  if (!json_text) return fail(AB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw addbasis::SyntaxError(e.byte, std::string("report is not valid JSON: ") + e.what());
    }
    addbasis::report::validate(doc);
  });
}

}  // extern "C"
