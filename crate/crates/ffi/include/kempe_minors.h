#ifndef KEMPE_MINORS_H
#define KEMPE_MINORS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum KmStatus {
  KM_STATUS_OK = 0,
  /**
   * Input was well formed but rejected (failed verification, no solution).
   */
  KM_STATUS_REJECTED = 1,
  /**
   * Input could not be parsed or referenced unknown items.
   */
  KM_STATUS_INVALID_INPUT = 2,
  /**
   * The solver hit an internal consistency check.
   */
  KM_STATUS_INTERNAL_ASSERTION = 3,
  KM_STATUS_NULL_POINTER = 4,
  KM_STATUS_PANIC = 5,
} KmStatus;

/**
 * A colored graph with an optional prescribed transversal.
 */
typedef struct KmInstance KmInstance;

/**
 * A bag system together with the transversal it was built for.
 */
typedef struct KmSolution KmSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *km_last_error_message(void);

/**
 * Parses a JSON instance document. With `verify`, the classes must form a
 * Kempe matching partition and a declared transversal must hit each class
 * once (`KM_STATUS_REJECTED` otherwise).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum KmStatus km_instance_parse(const char *json, bool verify, struct KmInstance **out);

/**
 * The `K_4` seed instance with its three perfect matchings.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KmStatus km_instance_k4(struct KmInstance **out);

/**
 * Bipartite circulant instance on `Z_m × {0, 1}` with one class per shift.
 *
 * # Safety
 * `shifts` must point to `len` readable values; `out` must be valid for writes.
 */
enum KmStatus km_instance_circulant(uint64_t m,
                                    const uint64_t *shifts,
                                    size_t len,
                                    struct KmInstance **out);

/**
 * # Safety
 * `instance` must be null or a handle from this library not yet freed.
 */
void km_instance_free(struct KmInstance *instance);

/**
 * Number of color classes, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t km_instance_class_count(const struct KmInstance *instance);

/**
 * Number of edges, or 0 for a null handle. Edges are indexed `0..count`
 * in declaration order.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t km_instance_edge_count(const struct KmInstance *instance);

/**
 * Runs the matching-partition, Kempe and transversal checks.
 *
 * # Safety
 * `instance` must be a live handle.
 */
enum KmStatus km_instance_verify(const struct KmInstance *instance);

/**
 * Serializes the instance as a JSON document.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be valid for writes.
 */
enum KmStatus km_instance_to_json(const struct KmInstance *instance, char **out);

/**
 * Solves for the instance's declared transversal, or the least edge of
 * every class when none is declared.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be valid for writes.
 */
enum KmStatus km_solve(const struct KmInstance *instance, struct KmSolution **out);

/**
 * Solves for the transversal given as edge indices (see
 * [`km_instance_edge_count`]).
 *
 * # Safety
 * `edges` must point to `len` readable values; `instance` must be a live
 * handle; `out` must be valid for writes.
 */
enum KmStatus km_solve_with(const struct KmInstance *instance,
                            const uint32_t *edges,
                            size_t len,
                            struct KmSolution **out);

/**
 * # Safety
 * `solution` must be null or a handle from this library not yet freed.
 */
void km_solution_free(struct KmSolution *solution);

/**
 * Number of bags, or 0 for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t km_solution_bag_count(const struct KmSolution *solution);

/**
 * Copies the edge indices of bag `bag` into `buf` (up to `cap` entries) and
 * returns the bag size, or 0 if the handle is null or `bag` is out of range.
 *
 * # Safety
 * `solution` must be null or a live handle; `buf` must be valid for `cap` writes.
 */
size_t km_solution_bag(const struct KmSolution *solution, size_t bag, uint32_t *buf, size_t cap);

/**
 * The solution as a JSON document; valid until the handle is freed.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
const char *km_solution_json(const struct KmSolution *solution);

/**
 * Checks a JSON solution document against the instance. Returns
 * `KM_STATUS_OK` if accepted and `KM_STATUS_REJECTED` otherwise.
 *
 * # Safety
 * `instance` must be a live handle; `json` must be a NUL-terminated string.
 */
enum KmStatus km_check(const struct KmInstance *instance, const char *json);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void km_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KEMPE_MINORS_H */
