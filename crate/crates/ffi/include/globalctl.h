#ifndef GLOBALCTL_H
#define GLOBALCTL_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GC_ANALYZE_LIE 1

#define GC_ANALYZE_BLOCKS (1 << 1)

#define GC_ANALYZE_QAOA (1 << 2)

#define GC_ANALYZE_ALLOW_DISCONNECTED (1 << 3)

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_UTF8 = 2,
  GC_STATUS_PARSE = 3,
  GC_STATUS_INVALID_GRAPH = 4,
  GC_STATUS_BUDGET = 5,
  GC_STATUS_VERIFICATION = 6,
  GC_STATUS_INTERNAL = 7,
} GcStatus;

/**
 * Opaque graph handle.
 */
typedef struct GcGraph GcGraph;

typedef struct GcSymmetryReport {
  uint64_t aut_order;
  size_t aut_span_dim;
  size_t commutant_dim;
  bool has_hidden;
} GcSymmetryReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success. Owned by the library.
 */
const char *gc_last_error(void);

/**
 * Library version as a static string.
 */
const char *gc_version(void);

/**
 * Parse a graph6 string.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum GcStatus gc_graph_from_graph6(const char *text, struct GcGraph **out);

/**
 * Build a graph from `m` edges given as `2 m` vertex indices.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (may be null when `m == 0`); `out` must be writable.
 */
enum GcStatus gc_graph_from_edges(size_t n,
                                  const size_t *edges,
                                  size_t m,
                                  struct GcGraph **out);

/**
 * Release a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void gc_graph_free(struct GcGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_graph_vertex_count(const struct GcGraph *g, size_t *out);

/**
 * graph6 encoding of the graph; free with [`gc_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_graph_to_graph6(const struct GcGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_automorphism_order(const struct GcGraph *g, uint64_t *out);

/**
 * Symmetry report for the full generator set.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_symmetry_report(const struct GcGraph *g, struct GcSymmetryReport *out);

/**
 * Full analysis report as JSON; `flags` is a combination of `GC_ANALYZE_*`.
 * Free the string with [`gc_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_analyze_json(const struct GcGraph *g, uint32_t flags, uint64_t seed, char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void gc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLOBALCTL_H */
