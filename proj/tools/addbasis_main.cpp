// addbasis command-line tool. Talks to the library only through addbasis.h.
//
// Exit codes: 0 success, 2 misuse or violated precondition, 3 a mathematical
// verification failed.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "addbasis/addbasis.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

struct UsageError {
  std::string message;
};

struct ContextDeleter {
  void operator()(ab_context* c) const { ab_context_destroy(c); }
};
struct SetDeleter {
  void operator()(ab_set* s) const { ab_set_destroy(s); }
};
struct ReportDeleter {
  void operator()(ab_report* r) const { ab_report_destroy(r); }
};
using ContextPtr = std::unique_ptr<ab_context, ContextDeleter>;
using SetPtr = std::unique_ptr<ab_set, SetDeleter>;
using ReportPtr = std::unique_ptr<ab_report, ReportDeleter>;

// Status from the C API, carried out of the command body.
struct ApiFailure {
  ab_status status;
  std::string message;
};

void check(ab_status status) {
  if (status != AB_OK) throw ApiFailure{status, ab_last_error_message()};
}

uint64_t natural(const std::string& text, const char* flag) {
  uint64_t value = 0;
  if (ab_parse_natural(text.c_str(), &value) != AB_OK)
    throw UsageError{std::string(flag) + ": " + ab_last_error_message()};
  return value;
}

unsigned small(const std::string& text, const char* flag) {
  uint64_t v = natural(text, flag);
  if (v > 1'000'000) throw UsageError{std::string(flag) + ": value too large"};
  return static_cast<unsigned>(v);
}

// "1,2,5..9" → {1,2,5,6,7,8,9}
std::vector<uint64_t> intlist(const std::string& text) {
  std::vector<uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) {
      auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(natural(item, "--add"));
      } else {
        uint64_t lo = natural(item.substr(0, dots), "--add");
        uint64_t hi = natural(item.substr(dots + 2), "--add");
        if (lo > hi || hi - lo > 1'000'000) throw UsageError{"--add: bad range '" + item + "'"};
        for (uint64_t x = lo;; ++x) {
          out.push_back(x);
          if (x == hi) break;
        }
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct Flags {
  std::string set;
  std::string bound;
  std::string fold;
  std::string fold_t;
  std::string hmax = "10";
  std::string subseq;
  std::string start = "1";
  std::string terms = "5";
  std::string add;
  std::string seed = "1";
  std::string limit = "0";
  std::string sweep;
  std::string threads = "1";
  std::string h2_threshold;
  bool csv = false;
  bool json = false;
  bool plot_data = false;
  bool square = false;
};

unsigned fold_of(const Flags& f, unsigned fallback) {
  if (!f.fold.empty() && !f.fold_t.empty()) throw UsageError{"give only one of --h / --t"};
  if (!f.fold.empty()) return small(f.fold, "--h");
  if (!f.fold_t.empty()) return small(f.fold_t, "--t");
  return fallback;
}

SetPtr parse_set(const std::string& text) {
  if (text.empty()) throw UsageError{"--set is required"};
  ab_set* raw = nullptr;
  check(ab_set_parse(text.c_str(), &raw));
  return SetPtr(raw);
}

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError{std::string(flag) + " is required"};
  return value;
}

int emit(const ab_report* report, const Flags& f) {
  if (f.csv && f.json) throw UsageError{"--json and --csv are exclusive"};
  ab_format format = f.plot_data ? AB_FORMAT_PLOT_DATA : f.csv ? AB_FORMAT_CSV : AB_FORMAT_JSON;
  char* text = nullptr;
  check(ab_report_render(report, format, &text));
  std::fputs(text, stdout);
  ab_string_free(text);
  return ab_report_passed(report) ? kExitOk : kExitVerification;
}

int run(const std::string& command, const Flags& f) {
  ab_context* raw_ctx = nullptr;
  check(ab_context_create(&raw_ctx));
  ContextPtr ctx(raw_ctx);
  if (const char* env = std::getenv("ADDBASIS_MAX_BOUND"))
    check(ab_context_set_max_bound(ctx.get(), natural(env, "ADDBASIS_MAX_BOUND")));
  check(ab_context_set_threads(ctx.get(), small(f.threads, "--threads")));
  check(ab_context_set_square_and_multiply(ctx.get(), f.square ? 1 : 0));
  if (!f.h2_threshold.empty()) check(ab_context_set_h2_threshold(ctx.get(), std::stod(f.h2_threshold)));

  ab_report* raw = nullptr;
  if (command == "verify-counterexample") {
    uint64_t bound = natural(f.bound.empty() ? "2.1e5" : f.bound, "--bound");
    check(ab_report_verify_counterexample(ctx.get(), bound, natural(f.seed, "--seed"), &raw));
  } else if (command == "sumset") {
    SetPtr set = parse_set(f.set);
    check(ab_report_sumset(ctx.get(), set.get(), fold_of(f, 2), natural(required(f.bound, "--bound"), "--bound"),
                           natural(f.limit, "--limit"), &raw));
  } else if (command == "order") {
    SetPtr set = parse_set(f.set);
    check(ab_report_order(ctx.get(), set.get(), natural(required(f.bound, "--bound"), "--bound"),
                          small(f.hmax, "--hmax"), &raw));
  } else if (command == "density") {
    SetPtr set = parse_set(f.set);
    check(ab_report_density(ctx.get(), set.get(), fold_of(f, 1), required(f.subseq, "--subseq").c_str(),
                            small(f.start, "--start"), small(f.terms, "--terms"), &raw));
  } else if (command == "stability") {
    SetPtr set = parse_set(f.set);
    unsigned h = fold_of(f, 3);
    uint64_t bound = natural(required(f.bound, "--bound"), "--bound");
    const char* family = required(f.subseq, "--subseq").c_str();
    if (!f.sweep.empty()) {
      if (!f.add.empty()) throw UsageError{"--sweep draws F at random; drop --add"};
      check(ab_report_stability_sweep(ctx.get(), set.get(), h, family, small(f.start, "--start"),
                                      small(f.terms, "--terms"), bound, small(f.sweep, "--sweep"),
                                      natural(f.seed, "--seed"), &raw));
    } else {
      std::vector<uint64_t> add = intlist(f.add);
      check(ab_report_stability(ctx.get(), set.get(), add.data(), add.size(), h, family, small(f.start, "--start"),
                                small(f.terms, "--terms"), bound, &raw));
    }
  } else if (command == "probe") {
    SetPtr set = parse_set(f.set);
    check(ab_report_probe(ctx.get(), set.get(), fold_of(f, 3), required(f.subseq, "--subseq").c_str(),
                          small(f.start, "--start"), small(f.terms, "--terms"), &raw));
  } else {
    throw UsageError{"unknown command '" + command + "'"};
  }
  ReportPtr report(raw);
  return emit(report.get(), f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"addbasis: iterated sumsets, densities and order bounds for additive bases of N"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Flags f;

  auto add_output = [&](CLI::App* sub) {
    sub->add_flag("--json", f.json, "JSON report (default)");
    sub->add_flag("--csv", f.csv, "rows only, as CSV");
    sub->add_flag("--plot-data", f.plot_data, "emit (k, n_k, ratio) triples");
    sub->add_option("--threads", f.threads, "kernel worker threads");
    sub->add_flag("--square", f.square, "square-and-multiply fold iteration");
  };
  auto add_fold = [&](CLI::App* sub) {
    sub->add_option("--h", f.fold, "fold count");
    sub->add_option("--t", f.fold_t, "fold count (alias of --h)");
  };
  auto add_subseq = [&](CLI::App* sub) {
    sub->add_option("--subseq", f.subseq, "subsequence, e.g. \"2*10^k+1\" or \"10^k\"");
    sub->add_option("--start", f.start, "first k (default 1)");
    sub->add_option("--terms", f.terms, "number of terms (default 5)");
  };

  auto* verify = app.add_subcommand("verify-counterexample", "check every claim about the counterexample family");
  verify->add_option("--bound", f.bound, "prefix bound (>= 2.1e4, default 2.1e5)");
  verify->add_option("--seed", f.seed, "stability sweep RNG seed");
  add_output(verify);

  auto* sumset = app.add_subcommand("sumset", "h-fold sumset on [0, bound] and its gaps");
  sumset->add_option("--set", f.set, "set expression");
  sumset->add_option("--bound", f.bound, "prefix bound");
  sumset->add_option("--limit", f.limit, "truncate the gap list (0 = all)");
  add_fold(sumset);
  add_output(sumset);

  auto* order = app.add_subcommand("order", "order bounds from a prefix");
  order->add_option("--set", f.set, "set expression");
  order->add_option("--bound", f.bound, "prefix bound");
  order->add_option("--hmax", f.hmax, "largest fold count scanned (default 10)");
  add_output(order);

  auto* density = app.add_subcommand("density", "(tA)(n)/n along a subsequence");
  density->add_option("--set", f.set, "set expression");
  add_fold(density);
  add_subseq(density);
  add_output(density);

  auto* stability = app.add_subcommand("stability", "witness-family survivors in (h-1)(A u F)");
  stability->add_option("--set", f.set, "set expression");
  stability->add_option("--add", f.add, "augmentation F, e.g. 11..21,500");
  stability->add_option("--bound", f.bound, "prefix bound");
  stability->add_option("--sweep", f.sweep, "random sweep with this many F ⊆ [0,1000], |F| <= 5");
  stability->add_option("--seed", f.seed, "sweep RNG seed");
  add_fold(stability);
  add_subseq(stability);
  add_output(stability);

  auto* probe = app.add_subcommand("probe", "numeric check of the two density hypotheses for order h");
  probe->add_option("--set", f.set, "set expression");
  probe->add_option("--h2-threshold", f.h2_threshold, "ratio below which (h-2)A counts as tending to 0");
  add_fold(probe);
  add_subseq(probe);
  add_output(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), f);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "addbasis: %s\n", e.message.c_str());
    return kExitUsage;
  } catch (const ApiFailure& e) {
    std::fprintf(stderr, "addbasis: %s: %s\n", ab_status_name(e.status), e.message.c_str());
    return e.status == AB_ERR_VERIFICATION || e.status == AB_ERR_INTERNAL ? kExitVerification : kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "addbasis: %s\n", e.what());
    return kExitUsage;
  }
}
