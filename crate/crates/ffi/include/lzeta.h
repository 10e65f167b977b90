/* C interface for the lzeta graph zeta library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
enum LzStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  LZ_STATUS_OK = 0,
  LZ_STATUS_NULL_POINTER = 1,
  LZ_STATUS_INVALID_UTF8 = 2,
  LZ_STATUS_PARSE_ERROR = 3,
  LZ_STATUS_VALIDATION_ERROR = 4,
  LZ_STATUS_BUDGET_EXCEEDED = 5,
  LZ_STATUS_VERIFY_FAILED = 6,
  LZ_STATUS_INTERNAL_ERROR = 7,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum LzStatus LzStatus;
#else
typedef int32_t LzStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Graph construction mode.
 */
enum LzGraphMode
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  LZ_GRAPH_MODE_REGULAR = 0,
  LZ_GRAPH_MODE_GENERAL = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum LzGraphMode LzGraphMode;
#else
typedef int32_t LzGraphMode;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Which determinant pipeline computes the zeta polynomial.
 */
enum LzZetaMethod
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  LZ_ZETA_METHOD_BASS = 0,
  LZ_ZETA_METHOD_EDGE = 1,
  LZ_ZETA_METHOD_T0T1 = 2,
  LZ_ZETA_METHOD_LAPLACIAN = 3,
  LZ_ZETA_METHOD_GENERALIZED_BASS = 4,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum LzZetaMethod LzZetaMethod;
#else
typedef int32_t LzZetaMethod;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Opaque graph handle.
 */
typedef struct LzGraph LzGraph;

/**
 * Opaque local-system handle (keeps its graph alive).
 */
typedef struct LzLocalSystem LzLocalSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message into `buffer` (NUL-terminated,
 * truncated to `length` bytes) and returns the full message length in
 * bytes, excluding the terminator. Safe to call with a null buffer to
 * query the length.
 */
size_t lz_last_error_message(char *buffer, size_t length);

/**
 * Parses graph JSON ({"vertices": n, "edges": [[u, v], ...]}) into a new
 * handle. The handle must be freed with [`lz_graph_free`].
 */
LzStatus lz_graph_parse_json(const char *json, LzGraphMode mode, struct LzGraph **out);

void lz_graph_free(struct LzGraph *graph);

uint64_t lz_graph_vertex_count(const struct LzGraph *graph);

uint64_t lz_graph_edge_count(const struct LzGraph *graph);

uint64_t lz_graph_rank(const struct LzGraph *graph);

/**
 * Girth (shortest closed geodesic length); fails on trees.
 */
LzStatus lz_graph_girth(const struct LzGraph *graph, uint64_t *out);

/**
 * q such that the graph is (q+1)-regular; fails otherwise.
 */
LzStatus lz_graph_regular_q(const struct LzGraph *graph, uint64_t *out);

/**
 * The trivial local system of the given stalk dimension.
 */
LzStatus lz_local_system_trivial(const struct LzGraph *graph,
                                 uint64_t dim,
                                 struct LzLocalSystem **out);

/**
 * Parses local-system JSON against a graph; the coefficient field is
 * chosen from the entries ("p/q" strings exact, numbers float).
 */
LzStatus lz_local_system_parse_json(const struct LzGraph *graph,
                                    const char *json,
                                    struct LzLocalSystem **out);

void lz_local_system_free(struct LzLocalSystem *ls);

uint64_t lz_local_system_dim(const struct LzLocalSystem *ls);

/**
 * Computes the zeta polynomial through the chosen pipeline and returns a
 * JSON report {"method", "degree", "coefficients"} with coefficients as
 * exact "p/q" strings (or float strings in float mode). Free the string
 * with [`lz_string_free`].
 */
LzStatus lz_zeta_json(const struct LzLocalSystem *ls, LzZetaMethod method, char **out_json);

/**
 * Verifies the determinant-quotient identity; returns the JSON report
 * {"pass", "lhs_coeffs", "rhs_coeffs", "first_mismatch"}. A report with
 * pass = false yields LZ_VERIFY_FAILED (the JSON is still written).
 */
LzStatus lz_verify_main_json(const struct LzLocalSystem *ls, char **out_json);

/**
 * Closed-form normalized determinant of Laplacian + lambda_u as an exact
 * "p/q" string. `u` is a rational string like "1/10".
 */
LzStatus lz_l2det_closed(uint64_t q, uint64_t n, uint64_t r, const char *u, char **out_value);

/**
 * Same as [`lz_l2det_closed`] but as a double.
 */
LzStatus lz_l2det_closed_f64(uint64_t q, uint64_t n, uint64_t r, const char *u, double *out_value);

/**
 * Frees a string returned by this library.
 */
void lz_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
