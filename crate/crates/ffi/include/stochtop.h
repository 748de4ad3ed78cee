#ifndef STOCHTOP_H
#define STOCHTOP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum StochtopStatus {
  STOCHTOP_STATUS_OK = 0,
  STOCHTOP_STATUS_NULL_POINTER = 1,
  STOCHTOP_STATUS_INVALID_ARGUMENT = 2,
  STOCHTOP_STATUS_PARSE = 3,
  STOCHTOP_STATUS_NUMERIC = 4,
  STOCHTOP_STATUS_CAP_EXCEEDED = 5,
  STOCHTOP_STATUS_IO = 6,
  STOCHTOP_STATUS_PANIC = 7,
} StochtopStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct StochtopComplex StochtopComplex;

/**
 * Opaque spectral measure.
 */
typedef struct StochtopMeasure StochtopMeasure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message into `buf` (NUL-terminated, truncated to
 * `len`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t stochtop_last_error(char *buf, size_t len);

/**
 * Samples a `d`-Linial–Meshulam complex on `n` vertices.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum StochtopStatus stochtop_lm_sample(size_t n,
                                       size_t d,
                                       double p,
                                       uint64_t seed,
                                       struct StochtopComplex **out);

/**
 * Samples a random `d`-clique complex truncated at `dim_cap`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum StochtopStatus stochtop_clique_sample(size_t n,
                                           size_t d,
                                           double p,
                                           size_t dim_cap,
                                           uint64_t seed,
                                           struct StochtopComplex **out);

/**
 * Parses the text complex format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum StochtopStatus stochtop_complex_parse(const char *text, struct StochtopComplex **out);

/**
 * Serializes to the text format. Writes at most `len` bytes including the
 * terminating NUL into `buf` and the full length (without NUL) into
 * `needed`.
 *
 * # Safety
 * `x` must be a live handle; `buf` null or valid for `len` bytes; `needed`
 * valid for writes.
 */
enum StochtopStatus stochtop_complex_emit(const struct StochtopComplex *x,
                                          char *buf,
                                          size_t len,
                                          size_t *needed);

/**
 * Releases a complex. Null is ignored.
 *
 * # Safety
 * `x` must be null or a handle not yet freed.
 */
void stochtop_complex_free(struct StochtopComplex *x);

/**
 * Vertex count of the ambient simplex.
 *
 * # Safety
 * `x` must be a live handle.
 */
size_t stochtop_complex_n(const struct StochtopComplex *x);

/**
 * `f_k`, the number of `k`-simplices; `f_{-1} = 1` for a non-empty complex.
 *
 * # Safety
 * `x` must be a live handle.
 */
size_t stochtop_complex_f(const struct StochtopComplex *x, int64_t k);

/**
 * Reduced Betti number `β_k` over a prime field.
 *
 * # Safety
 * `x` must be a live handle; `out` valid for writes.
 */
enum StochtopStatus stochtop_betti(const struct StochtopComplex *x, size_t k, size_t *out);

/**
 * `dim Z^k`.
 *
 * # Safety
 * `x` must be a live handle; `out` valid for writes.
 */
enum StochtopStatus stochtop_cocycle_dim(const struct StochtopComplex *x, size_t k, size_t *out);

/**
 * Empirical spectral distribution of the up-Laplacian in degree `k`.
 *
 * # Safety
 * `x` must be a live handle; `out` valid for writes.
 */
enum StochtopStatus stochtop_esd(const struct StochtopComplex *x,
                                 size_t k,
                                 struct StochtopMeasure **out);

/**
 * Number of atoms.
 *
 * # Safety
 * `mu` must be a live handle.
 */
size_t stochtop_measure_len(const struct StochtopMeasure *mu);

/**
 * Copies up to `len` atoms, sorted by value, into `values` and `masses`.
 * Returns the number copied.
 *
 * # Safety
 * `mu` must be a live handle; `values` and `masses` valid for `len` writes.
 */
size_t stochtop_measure_atoms(const struct StochtopMeasure *mu,
                              double *values,
                              double *masses,
                              size_t len);

/**
 * Releases a measure. Null is ignored.
 *
 * # Safety
 * `mu` must be null or a handle not yet freed.
 */
void stochtop_measure_free(struct StochtopMeasure *mu);

/**
 * `h_k(c)`; NaN for negative or non-finite `c`.
 */
double stochtop_h(uint32_t k, double c);

/**
 * `g_k(c)`; NaN unless `k >= 1` and `c > 0`.
 */
double stochtop_g(uint32_t k, double c);

/**
 * The threshold `c_d`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum StochtopStatus stochtop_c_threshold(uint32_t d, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STOCHTOP_H */
