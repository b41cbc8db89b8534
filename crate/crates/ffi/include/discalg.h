#ifndef DISCALG_H
#define DISCALG_H

/* Generated by cbindgen from discalg-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Space selector for norm computations; `p` and `alpha` accompany it
 * where the space needs parameters.
 */
typedef enum {
  DiscalgSpace_Hardy = 0,
  DiscalgSpace_Bergman = 1,
  DiscalgSpace_Bloch = 2,
  DiscalgSpace_LittleBloch = 3,
  DiscalgSpace_Besov = 4,
  DiscalgSpace_Sup = 5,
} DiscalgSpace;

/**
 * Status code returned by every entry point.
 */
typedef enum {
  DiscalgStatus_Ok = 0,
  DiscalgStatus_NullArgument = 1,
  DiscalgStatus_InvalidArgument = 2,
  DiscalgStatus_ComputeFailed = 3,
} DiscalgStatus;

/**
 * Opaque handle to a truncated series.
 */
typedef struct DiscalgSeries DiscalgSeries;

/**
 * Norm value with its method tag (0 closed form, 1 quadrature, 2 grid
 * supremum) and error estimate.
 */
typedef struct {
  double value;
  double error_estimate;
  int32_t method;
} DiscalgNormResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *discalg_version(void);

/**
 * Builds a series from `len` interleaved `(re, im)` coefficient pairs.
 *
 * # Safety
 * `coeffs` must point to `2·len` readable doubles and `out` must be a
 * valid destination pointer.
 */
DiscalgStatus discalg_series_new(const double *coeffs, size_t len, DiscalgSeries **out);

/**
 * The monomial `z^k` stored at `degree >= k`.
 *
 * # Safety
 * `out` must be a valid destination pointer.
 */
DiscalgStatus discalg_series_monomial(size_t k, size_t degree, DiscalgSeries **out);

/**
 * Seeded random series with geometrically decaying Gaussian coefficients.
 *
 * # Safety
 * `out` must be a valid destination pointer.
 */
DiscalgStatus discalg_series_random(uint64_t seed,
                                    size_t degree,
                                    double decay,
                                    double scale,
                                    DiscalgSeries **out);

/**
 * Releases a handle created by this library. Null is ignored.
 *
 * # Safety
 * `series` must have been produced by this library and not freed before.
 */
void discalg_series_free(DiscalgSeries *series);

/**
 * # Safety
 * `series` and `out` must be valid pointers.
 */
DiscalgStatus discalg_series_degree(const DiscalgSeries *series, size_t *out);

/**
 * Reads coefficient `k` into `(out_re, out_im)`.
 *
 * # Safety
 * All pointers must be valid.
 */
DiscalgStatus discalg_series_coeff(const DiscalgSeries *series,
                                   size_t k,
                                   double *out_re,
                                   double *out_im);

/**
 * Coefficientwise sum, truncated to the smaller degree.
 *
 * # Safety
 * All pointers must be valid handles / destinations.
 */
DiscalgStatus discalg_series_add(const DiscalgSeries *a,
                                 const DiscalgSeries *b,
                                 DiscalgSeries **out);

/**
 * Cauchy product, truncated to the smaller degree.
 *
 * # Safety
 * All pointers must be valid handles / destinations.
 */
DiscalgStatus discalg_series_mul(const DiscalgSeries *a,
                                 const DiscalgSeries *b,
                                 DiscalgSeries **out);

/**
 * Duhamel product, truncated to the smaller degree.
 *
 * # Safety
 * All pointers must be valid handles / destinations.
 */
DiscalgStatus discalg_series_duhamel(const DiscalgSeries *a,
                                     const DiscalgSeries *b,
                                     DiscalgSeries **out);

/**
 * Taylor coefficients of `a∘b` through the larger degree.
 *
 * # Safety
 * All pointers must be valid handles / destinations.
 */
DiscalgStatus discalg_series_compose(const DiscalgSeries *a,
                                     const DiscalgSeries *b,
                                     DiscalgSeries **out);

/**
 * Termwise derivative.
 *
 * # Safety
 * All pointers must be valid.
 */
DiscalgStatus discalg_series_derivative(const DiscalgSeries *series, DiscalgSeries **out);

/**
 * Horner evaluation at `re + i·im`.
 *
 * # Safety
 * All pointers must be valid.
 */
DiscalgStatus discalg_series_evaluate(const DiscalgSeries *series,
                                      double re,
                                      double im,
                                      double *out_re,
                                      double *out_im);

/**
 * Norm of the series in the selected space; `p`/`alpha` are read only
 * where the space uses them.
 *
 * # Safety
 * All pointers must be valid.
 */
DiscalgStatus discalg_norm(const DiscalgSeries *series,
                           DiscalgSpace space,
                           double p,
                           double alpha,
                           DiscalgNormResult *out);

/**
 * Worst Duhamel-multiplicativity defect of composition by `phi` over
 * monomial pairs up to `basis_degree`; writes the maximum residual and
 * whether it clears `tol`.
 *
 * # Safety
 * All pointers must be valid.
 */
DiscalgStatus discalg_duhamel_residual_max(const DiscalgSeries *phi,
                                           size_t basis_degree,
                                           double tol,
                                           double *out_max,
                                           bool *out_multiplicative);

/**
 * Linear-symbol classification: multiplicative iff every coefficient
 * other than the linear one vanishes within `tol` (relative to the
 * coefficient scale). `out_witness_index` receives the worst offending
 * index, or -1 when multiplicative.
 *
 * # Safety
 * All pointers must be valid.
 */
DiscalgStatus discalg_classify_linear_symbol(const DiscalgSeries *phi,
                                             double tol,
                                             bool *out_multiplicative,
                                             ptrdiff_t *out_witness_index);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DISCALG_H */
