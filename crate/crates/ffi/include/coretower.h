#ifndef CORETOWER_H
#define CORETOWER_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Largest order accepted by the exhaustive series builders.
 */
#define CT_MAX_BRUTE_ORDER 40

typedef enum CtStatus {
  CT_STATUS_OK = 0,
  CT_STATUS_NULL_POINTER = 1,
  CT_STATUS_INVALID_ARGUMENT = 2,
  CT_STATUS_INVALID_UTF8 = 3,
  CT_STATUS_BUFFER_TOO_SMALL = 4,
  CT_STATUS_PANIC = 5,
} CtStatus;

typedef enum CtFamily {
  /**
   * Partitions weighted by the size of tower row j.
   */
  CT_FAMILY_ROW_SIZE = 0,
  /**
   * Partitions weighted by the defect.
   */
  CT_FAMILY_DEFECT = 1,
  /**
   * Generalized (j, t)-cores.
   */
  CT_FAMILY_GENERALIZED_CORES = 2,
} CtFamily;

typedef enum CtMode {
  CT_MODE_CLOSED = 0,
  CT_MODE_BRUTE = 1,
} CtMode;

typedef enum CtCheck {
  CT_CHECK_CONGRUENCE = 0,
  CT_CHECK_RECURSION = 1,
  CT_CHECK_MONOTONE = 2,
} CtCheck;

/**
 * Opaque partition handle.
 */
typedef struct CtPartition CtPartition;

/**
 * Opaque truncated integer power series handle.
 */
typedef struct CtSeries CtSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next library call on the same thread.
 */
const char *ct_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string produced by this library, not yet freed.
 */
void ct_string_free(char *s);

/**
 * Builds a partition from `len` parts in non-increasing order.
 *
 * # Safety
 * `parts` must point to `len` readable values (or be null when `len` is 0);
 * `out` must be writable.
 */
enum CtStatus ct_partition_new(const size_t *parts, size_t len, struct CtPartition **out);

/**
 * Parses a comma-separated partition such as `"5,4,2,2,1"`; `""` is empty.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CtStatus ct_partition_parse(const char *text, struct CtPartition **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void ct_partition_free(struct CtPartition *p);

/**
 * Size of the partition; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t ct_partition_size(const struct CtPartition *p);

/**
 * Number of parts; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t ct_partition_len(const struct CtPartition *p);

/**
 * Copies the parts into `buf`. Fails with `BufferTooSmall` if `cap` is less
 * than the number of parts.
 *
 * # Safety
 * `p` must be a live handle; `buf` must hold `cap` values.
 */
enum CtStatus ct_partition_parts(const struct CtPartition *p, size_t *buf, size_t cap);

/**
 * Renders the partition as `(5,4,2,2,1)`, or `∅` when empty.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_partition_to_string(const struct CtPartition *p, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_t_core(const struct CtPartition *p, size_t t, struct CtPartition **out);

/**
 * Writes the `t` quotient components into `out[0..t]`.
 *
 * # Safety
 * `p` must be a live handle; `out` must hold `out_len` writable pointers.
 */
enum CtStatus ct_t_quotient(const struct CtPartition *p,
                            size_t t,
                            struct CtPartition **out,
                            size_t out_len);

/**
 * Rebuilds a partition from its `t`-core and `t` quotient components.
 *
 * # Safety
 * `core` must be a live handle; `quotient` must point to `len` live handles.
 */
enum CtStatus ct_reconstruct(const struct CtPartition *core,
                             const struct CtPartition *const *quotient,
                             size_t len,
                             size_t t,
                             struct CtPartition **out);

/**
 * Total size of row `j` of the `t`-core tower.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_row_size(const struct CtPartition *p, size_t t, size_t j, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_defect(const struct CtPartition *p, size_t t, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_is_generalized_core(const struct CtPartition *p, size_t j, size_t t, bool *out);

/**
 * The full `t`-core tower as a JSON object.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_tower_json(const struct CtPartition *p, size_t t, char **out);

/**
 * Builds a generating function to the given truncation order. `j` is
 * ignored for `Defect`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CtStatus ct_series_build(enum CtFamily family,
                              enum CtMode mode,
                              size_t j,
                              size_t t,
                              size_t order,
                              struct CtSeries **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void ct_series_free(struct CtSeries *s);

/**
 * Truncation order; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t ct_series_order(const struct CtSeries *s);

/**
 * Coefficient of `q^n` as a decimal string.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_series_coeff(const struct CtSeries *s, size_t n, char **out);

/**
 * `{"truncation_order": N, "coeffs": ["...", ...]}`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CtStatus ct_series_to_json(const struct CtSeries *s, char **out);

/**
 * Runs an exact coefficient check. `passed` receives the verdict and, when
 * `report_json` is non-null, the full report is written there.
 *
 * # Safety
 * `passed` must be writable; `report_json` must be null or writable.
 */
enum CtStatus ct_verify(enum CtCheck check,
                        size_t t,
                        size_t order,
                        bool *passed,
                        char **report_json);

/**
 * Relative residual of the small-`eps` expansion of the divisor-sum series
 * at `q = exp(-m * eps)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CtStatus ct_transform_residual(uint64_t m, double eps, size_t digits, double *out);

/**
 * Ratio of the exact eta quotient to its leading asymptotic at `q = exp(-eps)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CtStatus ct_eta_ratio(double eps, size_t digits, double *out);

/**
 * Exact `(t-1) d_t(n) / (n p(n))` for the defect generating function.
 *
 * # Safety
 * `out` must be writable.
 */
enum CtStatus ct_defect_ratio(size_t t, size_t n, size_t digits, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORETOWER_H */
