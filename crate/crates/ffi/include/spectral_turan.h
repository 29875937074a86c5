#ifndef SPECTRAL_TURAN_H
#define SPECTRAL_TURAN_H

/* Generated by cbindgen from spectral-turan-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum StStatus {
  StStatusOk = 0,
  /**
   * Input string could not be parsed as a graph source.
   */
  StStatusParse = 1,
  /**
   * The eigensolver failed to converge.
   */
  StStatusNumeric = 2,
  /**
   * An argument was out of range for the operation.
   */
  StStatusInvalidArg = 3,
  /**
   * The caller-supplied buffer is too small.
   */
  StStatusBufferTooSmall = 4,
  /**
   * A required pointer was NULL.
   */
  StStatusNullPointer = 5,
  /**
   * An unexpected internal failure (caught panic).
   */
  StStatusInternal = 6,
} StStatus;

/**
 * Opaque graph handle; create with `st_graph_from_g6` or
 * `st_graph_from_source`, release with `st_graph_free`.
 */
typedef struct StGraph StGraph;

/**
 * Result of evaluating the two-eigenvalue clique bound on a graph.
 */
typedef struct StVerdict {
  /**
   * mu1^2, plus mu2^2 when the indicator applies
   */
  double lhs;
  /**
   * 2 (omega - 1) / omega * m
   */
  double bound;
  /**
   * bound - lhs
   */
  double slack;
  double mu1;
  double mu2;
  uint32_t omega;
  /**
   * 1 when mu2 >= 0 and its square was included in lhs
   */
  uint8_t indicator_applied;
  uint8_t tight;
  uint8_t violated;
} StVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a single graph6 record (optionally with the standard header).
 *
 * # Safety
 * `g6` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum StStatus st_graph_from_g6(const char *g6, struct StGraph **out);

/**
 * Resolves a generator expression ("turan:12,3", "petersen", "cycle:5", ...)
 * or a graph6 literal to a single graph.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum StStatus st_graph_from_source(const char *text, struct StGraph **out);

/**
 * Releases a graph handle. NULL is a no-op.
 *
 * # Safety
 * `g` must have come from a constructor of this library and not already
 * have been freed.
 */
void st_graph_free(struct StGraph *g);

/**
 * Number of vertices; 0 for NULL.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
uint64_t st_graph_vertex_count(const struct StGraph *g);

/**
 * Number of edges; 0 for NULL.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
uint64_t st_graph_edge_count(const struct StGraph *g);

/**
 * Writes the canonical graph6 record (NUL-terminated) into `buf`.
 * `written` receives the record length excluding the NUL; on
 * `ST_STATUS_BUFFER_TOO_SMALL` it receives the required capacity.
 *
 * # Safety
 * `g` must be a live handle; `buf` must point to `cap` writable bytes;
 * `written` must be a valid pointer.
 */
enum StStatus st_graph_to_g6(const struct StGraph *g, char *buf, uintptr_t cap, uintptr_t *written);

/**
 * Exact clique number.
 *
 * # Safety
 * `g` must be a live handle and `omega` a valid pointer.
 */
enum StStatus st_clique_number(const struct StGraph *g, uint32_t *omega);

/**
 * Adjacency eigenvalues in descending order. `eigenvalues` must hold
 * `st_graph_vertex_count(g)` doubles; `residual` (optional, may be NULL)
 * receives the max infinity-norm eigenpair residual.
 *
 * # Safety
 * `g` must be a live handle; `eigenvalues` must point to `cap` writable
 * doubles.
 */
enum StStatus st_spectrum(const struct StGraph *g,
                          double *eigenvalues,
                          uintptr_t cap,
                          double *residual);

/**
 * Evaluates mu1^2 + mu2^2 [mu2 >= 0] against 2 (omega - 1) / omega * m
 * with the default tightness/violation tolerances (1e-6 relative).
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_bn_verdict(const struct StGraph *g, struct StVerdict *out);

/**
 * Static description of a status code; never NULL.
 */
const char *st_status_message(enum StStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRAL_TURAN_H */
