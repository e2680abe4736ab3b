/*
 * libmajorize: majorization of nonnegative summable sequences by partial
 * sums, hockey-stick sums and complete monotonicity of
 * f(s) = (sum b^s - sum a^s) / (s (s - 1)), plus catalyst search.
 *
 * All objects are opaque. Functions returning mj_status leave a message for
 * mj_last_error() on failure; the message is per thread and stays valid
 * until the next failing call on that thread. Strings returned by report
 * accessors are owned by the report.
 */
#ifndef MAJORIZE_MAJORIZE_H
#define MAJORIZE_MAJORIZE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MJ_API __declspec(dllexport)
#else
#define MJ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mj_context mj_context;
typedef struct mj_sequence mj_sequence;
typedef struct mj_report mj_report;

typedef enum mj_status {
    MJ_OK = 0,
    MJ_ERR_INVALID_ARGUMENT = 1,
    MJ_ERR_PARSE = 2,
    MJ_ERR_UNSUPPORTED = 3,
    MJ_ERR_IO = 4,
    MJ_ERR_INTERNAL = 5
} mj_status;

typedef enum mj_verdict {
    MJ_HOLDS = 0,
    MJ_FAILS = 1,
    MJ_INCONCLUSIVE = 2,
    /* the characterizations disagree: a bug signal */
    MJ_DISAGREEMENT = 3
} mj_verdict;

typedef enum mj_ties { MJ_TIES_AS_EQUAL = 0, MJ_TIES_STRICT = 1 } mj_ties;

MJ_API const char* mj_version(void);
MJ_API const char* mj_last_error(void);

/* ---- configuration ---- */

MJ_API mj_status mj_context_new(mj_context** out);
MJ_API void mj_context_free(mj_context* ctx);

/* At least 53 bits. Default 128. */
MJ_API mj_status mj_context_set_precision(mj_context* ctx, unsigned bits);
MJ_API mj_status mj_context_set_ties(mj_context* ctx, mj_ties ties);
MJ_API mj_status mj_context_set_threads(mj_context* ctx, unsigned threads);
MJ_API mj_status mj_context_set_seed(mj_context* ctx, uint64_t seed);
/* CM sampling grid: geometric on [s_min, s_max], 1 < s_min <= s_max. */
MJ_API mj_status mj_context_set_cm_grid(mj_context* ctx, double s_min, double s_max, size_t points);
MJ_API mj_status mj_context_set_order_max(mj_context* ctx, size_t order_max);
/* Budget for the adaptive refutation used when the order checks fail. */
MJ_API mj_status mj_context_set_refute_budget(mj_context* ctx, size_t max_order, double s_min, double s_max,
                                              unsigned max_precision, size_t max_evaluations);
/* Catalyst grid: dimensions [dim_min, dim_max], step 1 / resolution. */
MJ_API mj_status mj_context_set_search(mj_context* ctx, size_t dim_min, size_t dim_max, size_t resolution,
                                       size_t refine_steps, size_t budget);
/* Keep every (s, n) CM sample so the report carries CSV data. */
MJ_API mj_status mj_context_set_keep_samples(mj_context* ctx, int keep);
/* Reject sequences whose mass is not 1. */
MJ_API mj_status mj_context_set_require_normalized(mj_context* ctx, int require);

/* ---- sequences ---- */

/* JSON document {"prefix": [...], "tail": {...}}. With positive != 0 every
 * prefix entry must be > 0 (catalysts). */
MJ_API mj_status mj_sequence_parse(const mj_context* ctx, const char* json, int positive, mj_sequence** out);
MJ_API mj_status mj_sequence_load(const mj_context* ctx, const char* path, int positive, mj_sequence** out);
MJ_API void mj_sequence_free(mj_sequence* seq);
/* Shortest decimal of the total mass, written into buf (NUL terminated). */
MJ_API mj_status mj_sequence_mass(const mj_context* ctx, const mj_sequence* seq, char* buf, size_t len);

/* ---- commands ---- */

/* Partial sums, hockey-stick sums and complete monotonicity. */
MJ_API mj_status mj_check(const mj_context* ctx, const mj_sequence* a, const mj_sequence* b, mj_report** out);
/* CSV table s,zeta,f,f1,f2,f3 at `samples` points of the CM grid range. */
MJ_API mj_status mj_zeta_table(const mj_context* ctx, const mj_sequence* a, const mj_sequence* b, size_t samples,
                               mj_report** out);
/* With catalyst == NULL a catalyst search is run. */
MJ_API mj_status mj_trump(const mj_context* ctx, const mj_sequence* x, const mj_sequence* y,
                          const mj_sequence* catalyst, mj_report** out);
MJ_API mj_status mj_probe(const mj_context* ctx, const mj_sequence* a, const mj_sequence* b, mj_report** out);
MJ_API mj_status mj_selftest(const mj_context* ctx, size_t cases, mj_report** out);

/* ---- reports ---- */

MJ_API mj_verdict mj_report_verdict(const mj_report* r);
/* 0 holds, 1 fails, 2 inconclusive, 3 disagreement. */
MJ_API int mj_report_exit_code(const mj_report* r);
MJ_API const char* mj_report_json(const mj_report* r);
/* The same JSON on a single line, for append-only logs. */
MJ_API const char* mj_report_json_line(const mj_report* r);
MJ_API const char* mj_report_text(const mj_report* r);
/* Empty when the command produced no table. */
MJ_API const char* mj_report_csv(const mj_report* r);
MJ_API void mj_report_free(mj_report* r);

#ifdef __cplusplus
}
#endif

#endif
