#ifndef PARTINEQ_H
#define PARTINEQ_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PqStatus {
  PQ_STATUS_OK = 0,
  PQ_STATUS_NULL_POINTER = 1,
  PQ_STATUS_INVALID_UTF8 = 2,
  PQ_STATUS_DOMAIN = 3,
  PQ_STATUS_MEMBERSHIP = 4,
  PQ_STATUS_UNSUPPORTED_PREDICATE = 5,
  PQ_STATUS_PARSE = 6,
  PQ_STATUS_NO_SOLUTION = 7,
  PQ_STATUS_PRECONDITION = 8,
  PQ_STATUS_BOUND_NOT_MET = 9,
  PQ_STATUS_NOT_IN_RANGE = 10,
  PQ_STATUS_OUT_OF_SCOPE = 11,
  PQ_STATUS_RESOURCE = 12,
  PQ_STATUS_UNKNOWN_NAME = 13,
  PQ_STATUS_MISMATCHED_ORDER = 14,
  PQ_STATUS_PANIC = 15,
} PqStatus;

/**
 * Partition class parameters `(L, s, V, kind)`.
 */
typedef struct PqClass PqClass;

/**
 * Class counts for weights `0..=nmax`.
 */
typedef struct PqCountTable PqCountTable;

/**
 * A partition stored as part/frequency pairs.
 */
typedef struct PqPartition PqPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pq_last_error(void);

/**
 * Library version as a static string.
 */
const char *pq_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pq_string_free(char *s);

/**
 * Builds class parameters. `kind` is one of `I, D, DV, E, S, P`; `v` points
 * to `v_len` parts and may be null when `v_len` is zero.
 *
 * # Safety
 * `v` must be valid for `v_len` reads; `kind` must be a C string.
 */
enum PqStatus pq_class_new(uint64_t l,
                           uint64_t s,
                           const uint64_t *v,
                           size_t v_len,
                           const char *kind,
                           struct PqClass **out);

/**
 * # Safety
 * `c` must come from [`pq_class_new`] and not have been freed.
 */
void pq_class_free(struct PqClass *c);

/**
 * Parses a partition from JSON pairs such as `[["1","3"],["4","1"]]`.
 *
 * # Safety
 * `json` must be a C string; `out` must be writable.
 */
enum PqStatus pq_partition_from_json(const char *json, struct PqPartition **out);

/**
 * Serializes a partition to JSON; free the result with [`pq_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PqStatus pq_partition_to_json(const struct PqPartition *p, char **out);

/**
 * Weight of a partition as a decimal string.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PqStatus pq_partition_weight(const struct PqPartition *p, char **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void pq_partition_free(struct PqPartition *p);

/**
 * Class membership test. Class P is not decidable and reports
 * `UnsupportedPredicate`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum PqStatus pq_is_member(const struct PqPartition *p, const struct PqClass *c, bool *out);

/**
 * Counts class members of every weight up to `nmax`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum PqStatus pq_count_series(const struct PqClass *c, size_t nmax, struct PqCountTable **out);

/**
 * Number of entries in the table (`nmax + 1`); zero for null.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
size_t pq_count_table_len(const struct PqCountTable *t);

/**
 * Count at weight `n` as a decimal string.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum PqStatus pq_count_table_get(const struct PqCountTable *t, size_t n, char **out);

/**
 * # Safety
 * `t` must come from [`pq_count_series`] and not have been freed.
 */
void pq_count_table_free(struct PqCountTable *t);

/**
 * Applies map `t1`, `t3` or `alt` to `p` drawn from the domain described by
 * `c`. Writes the image and its trace as JSON.
 *
 * # Safety
 * Handles must be live; `map` must be a C string; outputs must be writable.
 */
enum PqStatus pq_map_apply(const char *map,
                           const struct PqPartition *p,
                           const struct PqClass *c,
                           struct PqPartition **out_image,
                           char **out_trace);

/**
 * Inverts a map on its image. Writes the preimage and the trace.
 *
 * # Safety
 * Same contract as [`pq_map_apply`].
 */
enum PqStatus pq_map_recover(const char *map,
                             const struct PqPartition *image,
                             const struct PqClass *c,
                             struct PqPartition **out_preimage,
                             char **out_trace);

/**
 * Largest integer not representable as `ax + by` with `x, y >= 0`, as a
 * decimal string. Requires `gcd(a, b) = 1` and `a, b >= 2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PqStatus pq_frobenius_number(uint64_t a, uint64_t b, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARTINEQ_H */
