/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GHOSTLENGTH_H
#define GHOSTLENGTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GlStatus {
  GL_STATUS_OK = 0,
  GL_STATUS_NULL_POINTER = 1,
  GL_STATUS_INVALID_ARGUMENT = 2,
  GL_STATUS_CAPACITY = 3,
  GL_STATUS_PARSE = 4,
  GL_STATUS_DIMENSION_MISMATCH = 5,
  GL_STATUS_NOT_A_COMPLEX = 6,
  GL_STATUS_NOT_A_CHAIN_MAP = 7,
  GL_STATUS_PRECONDITION = 8,
  GL_STATUS_FALSIFIED = 9,
  GL_STATUS_IO = 10,
  GL_STATUS_UTF8 = 11,
  GL_STATUS_PANIC = 12,
} GlStatus;

/**
 * Opaque handle to a chain map.
 */
typedef struct GlChainMap GlChainMap;

/**
 * Opaque handle to a chain complex.
 */
typedef struct GlComplex GlComplex;

typedef struct GlBoundsReport {
  int64_t n;
  uint64_t steenrod;
  uint64_t weighted;
  uint64_t monotone;
  int64_t horizon;
  /**
   * Meaningful only when `has_upper` is true.
   */
  uint64_t upper;
  bool has_upper;
} GlBoundsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *gl_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gl_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void gl_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_stl(int64_t n, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_weighted_bound(int64_t n, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_monotone_bound(int64_t n, int64_t horizon, uint64_t *out);

/**
 * Fails with `InvalidArgument` for `n < 0`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_upper_bound(int64_t n, uint64_t *out);

/**
 * A negative `horizon` selects the default `2n + 64`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_bounds_report(int64_t n, int64_t horizon, struct GlBoundsReport *out);

/**
 * Parses a complex document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
enum GlStatus gl_complex_from_json(const char *json, struct GlComplex **out);

/**
 * # Safety
 * `c` must be null or a handle from `gl_complex_from_json`, freed once.
 */
void gl_complex_free(struct GlComplex *c);

/**
 * Homology as a JSON array of `{"degree", "group", "rank", "torsion"}`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes. Free the
 * string with `gl_string_free`.
 */
enum GlStatus gl_complex_homology_json(const struct GlComplex *c, char **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum GlStatus gl_complex_is_ghost_projective(const struct GlComplex *c, bool *out);

/**
 * Writes whether a length-`k` certificate exists. A violated precondition
 * is reported as `false` with the reason in the last error message and
 * status `Precondition`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum GlStatus gl_certify_length(const struct GlComplex *c, size_t k, bool *out);

/**
 * Parses a chain-map document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
enum GlStatus gl_chain_map_from_json(const char *json, struct GlChainMap **out);

/**
 * # Safety
 * `m` must be null or a handle from `gl_chain_map_from_json`, freed once.
 */
void gl_chain_map_free(struct GlChainMap *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be valid for writes.
 */
enum GlStatus gl_chain_map_is_ghost(const struct GlChainMap *m, bool *out);

/**
 * Searches for a null-homotopy. `found` reports the outcome; when found and
 * `homotopy_json` is non-null it receives `{"components": {degree: matrix}}`.
 *
 * # Safety
 * `m` must be a live handle; `found` must be valid for writes;
 * `homotopy_json` may be null.
 */
enum GlStatus gl_chain_map_null_homotopy(const struct GlChainMap *m,
                                         bool *found,
                                         char **homotopy_json);

/**
 * Parses a short exact sequence document and runs both purity tests.
 *
 * # Safety
 * `json` must be a nul-terminated string; both out-pointers must be valid.
 */
enum GlStatus gl_is_pure_exact_json(const char *json, bool *pure, bool *split);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GHOSTLENGTH_H */
