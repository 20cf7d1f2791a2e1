/*
 * addbasis C API.
 *
 * All objects are opaque handles created by an ab_*_create / ab_*_parse /
 * producer call and released with the matching ab_*_destroy. Functions
 * return ab_status; on failure the thread-local message from
 * ab_last_error_message() describes the problem. Strings returned through
 * `char** out` are owned by the caller and released with ab_string_free().
 *
 * Handles are immutable after construction except ab_context setters, and
 * may be shared between threads for reading.
 */
#ifndef ADDBASIS_H
#define ADDBASIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AB_API __declspec(dllexport)
#else
#define AB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ab_context ab_context;
typedef struct ab_set ab_set;
typedef struct ab_bits ab_bits;
typedef struct ab_report ab_report;

typedef enum ab_status {
  AB_OK = 0,
  AB_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
  AB_ERR_SYNTAX = 2,           /* see ab_last_error_offset() */
  AB_ERR_SEMANTIC = 3,
  AB_ERR_OVERFLOW = 4,
  AB_ERR_BOUND_CEILING = 5,
  AB_ERR_BOUND_MISMATCH = 6,
  AB_ERR_PRECONDITION = 7,
  AB_ERR_VERIFICATION = 8,
  AB_ERR_OUT_OF_MEMORY = 9,
  AB_ERR_INTERNAL = 10
} ab_status;

typedef enum ab_format {
  AB_FORMAT_JSON = 0,
  AB_FORMAT_CSV = 1,
  AB_FORMAT_PLOT_DATA = 2
} ab_format;

AB_API const char* ab_version(void);
AB_API const char* ab_status_name(ab_status status);
AB_API const char* ab_last_error_message(void);
/* Byte offset of the last syntax error, or -1. */
AB_API int64_t ab_last_error_offset(void);
AB_API void ab_string_free(char* s);

/* Parses a natural, accepting exact scientific notation such as "2.1e5". */
AB_API ab_status ab_parse_natural(const char* text, uint64_t* out);

/* ---- context: configuration shared by computations ---------------------- */

AB_API ab_status ab_context_create(ab_context** out);
AB_API void ab_context_destroy(ab_context* ctx);
AB_API ab_status ab_context_set_max_bound(ab_context* ctx, uint64_t max_bound);
AB_API uint64_t ab_context_max_bound(const ab_context* ctx);
AB_API ab_status ab_context_set_threads(ab_context* ctx, unsigned threads);
AB_API ab_status ab_context_set_square_and_multiply(ab_context* ctx, int enabled);
AB_API ab_status ab_context_set_h2_threshold(ab_context* ctx, double threshold);

/* ---- set expressions ---------------------------------------------------- */

AB_API ab_status ab_set_parse(const char* text, ab_set** out);
AB_API void ab_set_destroy(ab_set* set);
AB_API ab_status ab_set_to_string(const ab_set* set, char** out);
AB_API ab_status ab_set_contains(const ab_set* set, uint64_t n, int* out);
/* |set ∩ [1, n]| */
AB_API ab_status ab_set_counting(const ab_set* set, uint64_t n, uint64_t* out);
/* Block `index` (>= 1) of a paperfamily expression. */
AB_API ab_status ab_family_block(const ab_set* set, unsigned index, uint64_t* lo, uint64_t* hi);

/* ---- prefix bitsets ----------------------------------------------------- */

AB_API ab_status ab_materialize(const ab_context* ctx, const ab_set* set, uint64_t bound, ab_bits** out);
AB_API ab_status ab_sumset(const ab_context* ctx, const ab_set* set, unsigned h, uint64_t bound, ab_bits** out);
AB_API ab_status ab_pair_sumset(const ab_context* ctx, const ab_bits* p, const ab_bits* q, uint64_t bound,
                                ab_bits** out);
AB_API void ab_bits_destroy(ab_bits* bits);
AB_API uint64_t ab_bits_bound(const ab_bits* bits);
AB_API int ab_bits_test(const ab_bits* bits, uint64_t i);
AB_API uint64_t ab_bits_count(const ab_bits* bits);
AB_API int ab_bits_equal(const ab_bits* a, const ab_bits* b);

AB_API ab_status ab_representation_count(const ab_context* ctx, const ab_set* set, unsigned h, uint64_t n,
                                         uint64_t* count, int* saturated);

/* ---- reports ------------------------------------------------------------ */

/* limit == 0 means no truncation of the gap list. */
AB_API ab_status ab_report_sumset(const ab_context* ctx, const ab_set* set, unsigned h, uint64_t bound,
                                  uint64_t limit, ab_report** out);
AB_API ab_status ab_report_order(const ab_context* ctx, const ab_set* set, uint64_t bound, unsigned h_max,
                                 ab_report** out);
AB_API ab_status ab_report_density(const ab_context* ctx, const ab_set* set, unsigned t, const char* subseq,
                                   unsigned start, unsigned terms, ab_report** out);
AB_API ab_status ab_report_stability(const ab_context* ctx, const ab_set* set, const uint64_t* add, size_t add_len,
                                     unsigned h, const char* family, unsigned start, unsigned terms, uint64_t bound,
                                     ab_report** out);
AB_API ab_status ab_report_stability_sweep(const ab_context* ctx, const ab_set* set, unsigned h, const char* family,
                                           unsigned start, unsigned terms, uint64_t bound, size_t runs,
                                           uint64_t seed, ab_report** out);
AB_API ab_status ab_report_probe(const ab_context* ctx, const ab_set* set, unsigned h, const char* subseq,
                                 unsigned start, unsigned terms, ab_report** out);
AB_API ab_status ab_report_verify_counterexample(const ab_context* ctx, uint64_t bound, uint64_t seed,
                                                 ab_report** out);

AB_API void ab_report_destroy(ab_report* report);
AB_API ab_status ab_report_render(const ab_report* report, ab_format format, char** out);
/* 1 when every verification claim in the report passed. */
AB_API int ab_report_passed(const ab_report* report);
AB_API double ab_report_timing_ms(const ab_report* report);
/* Checks a rendered JSON report against the report schema. */
AB_API ab_status ab_report_validate(const char* json_text);

#ifdef __cplusplus
}
#endif

#endif /* ADDBASIS_H */
