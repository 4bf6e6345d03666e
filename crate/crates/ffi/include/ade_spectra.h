#ifndef ADE_SPECTRA_H
#define ADE_SPECTRA_H

/* Generated by cbindgen from ade-spectra-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum AdeStatus {
  ADE_STATUS_OK = 0,
  // Unknown graph name, bad parameter, or out-of-domain request.
  ADE_STATUS_INVALID_ARGUMENT = 1,
  // A verification check failed (mathematics, not plumbing).
  ADE_STATUS_VERIFICATION_FAILED = 2,
  // Null pointer where a value was required.
  ADE_STATUS_NULL_POINTER = 3,
  // Result does not fit the requested fixed-width type.
  ADE_STATUS_OVERFLOW = 4,
  // Internal invariant violation; report a bug.
  ADE_STATUS_INTERNAL = 5,
} AdeStatus;

// Opaque graph handle.
typedef struct AdeGraph AdeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build a finite catalog graph from its name (`A(4)`, `E8ext`,
// `F(2,1,4)`, ...). On success the handle must be released with
// [`ade_graph_free`].
enum AdeStatus ade_graph_new(const char *name, struct AdeGraph **out);

// Release a graph handle. Null is a no-op.
void ade_graph_free(struct AdeGraph *graph);

// Number of vertices, or 0 for a null handle.
uint32_t ade_graph_vertex_count(const struct AdeGraph *graph);

// Number of closed walks of length `2k` based at the distinguished
// vertex. Fails with `Overflow` when the exact count exceeds `u64`.
enum AdeStatus ade_graph_loop_count(const struct AdeGraph *graph, uint32_t k, uint64_t *out);

// Factored `T`-series display, e.g. `(1-q^6)(1-q^8)/((1-q^3)(1-q^12))`.
enum AdeStatus ade_graph_t_series(const struct AdeGraph *graph, char **out);

// Catalog spectral measure as JSON: atom keys to exact fractions, or
// `{"cyclotomic":false}` for the exceptional graphs.
enum AdeStatus ade_measure_json(const char *name, char **out);

// Run the cyclotomic decomposition and return the outcome as JSON
// (feasible coefficients, or an infeasibility certificate with its
// residual check vector).
enum AdeStatus ade_decompose_json(const char *name, char **out);

// Run the per-graph verification checks (loop counts up to `2*max_k`).
// Returns `Ok` when every check passes and `VerificationFailed`
// otherwise, with the failing check named in the error message.
enum AdeStatus ade_verify_graph(const char *name, uint32_t max_k);

// Full catalog report as JSON (the same bytes the CLI emits).
enum AdeStatus ade_report_json(uint32_t max_k, char **out);

// Most recent error message on this thread, or null if none. The caller
// frees the returned string with [`ade_string_free`].
char *ade_last_error_message(void);

// Release a string returned by this library. Null is a no-op.
void ade_string_free(char *s);

// Library version as a static string (not freed by the caller).
const char *ade_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADE_SPECTRA_H */
