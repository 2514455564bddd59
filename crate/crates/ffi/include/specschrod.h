#ifndef SPECSCHROD_H
#define SPECSCHROD_H

/* Generated by cbindgen from specschrod-ffi; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. Matches the CLI exit codes where a
 * category exists there; NULL_POINTER, PANIC and BUFFER_TOO_SMALL are
 * boundary-only.
 */
typedef enum {
  SPECSCHROD_STATUS_OK = 0,
  SPECSCHROD_STATUS_NULL_POINTER = 1,
  SPECSCHROD_STATUS_USAGE = 2,
  SPECSCHROD_STATUS_INVALID_ARGUMENT = 3,
  SPECSCHROD_STATUS_DOMAIN = 4,
  SPECSCHROD_STATUS_ASSEMBLY = 5,
  SPECSCHROD_STATUS_CONTRACT = 6,
  SPECSCHROD_STATUS_CONVERGENCE = 7,
  SPECSCHROD_STATUS_UNSUPPORTED = 8,
  SPECSCHROD_STATUS_DIVISION_GUARD = 9,
  SPECSCHROD_STATUS_IO = 10,
  SPECSCHROD_STATUS_PANIC = 11,
  SPECSCHROD_STATUS_BUFFER_TOO_SMALL = 12,
} SpecschrodStatus;

/**
 * Assembled discretization of one problem. Opaque.
 */
typedef struct SpecschrodOperator SpecschrodOperator;

/**
 * Computed spectrum in the library's normal form: sorted ascending by
 * (re, im), unit real-part vector columns, relative residuals. Opaque.
 */
typedef struct SpecschrodSolution SpecschrodSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Never null; do not
 * free.
 */
const char *specschrod_version(void);

/**
 * Message of the most recent failure on the calling thread, empty if none.
 * The pointer stays valid until the next failing call on the same thread;
 * do not free.
 */
const char *specschrod_last_error_message(void);

/**
 * Assemble the Coffey-Evans potential `-2 beta cos(2x) + beta^2 sin^2(2x)`
 * on `(-pi/2, pi/2)` with Dirichlet ends, on an `n`-point Chebyshev grid.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
SpecschrodStatus specschrod_operator_coffey_evans(double beta,
                                                  uintptr_t n,
                                                  SpecschrodOperator **out);

/**
 * Assemble the hydrogen radial problem `l(l+1)/x^2 - 1/x` on the half line,
 * algebraically mapped with parameter `c`, on an `n`-point Chebyshev grid.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
SpecschrodStatus specschrod_operator_hydrogen(double l,
                                              uintptr_t n,
                                              double c,
                                              SpecschrodOperator **out);

/**
 * Assemble the decaying-Coulomb problem `l(l+1)/x^2 - 1/x + exp(-x)` on the
 * half line, algebraically mapped with parameter `c`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
SpecschrodStatus specschrod_operator_coulomb_decay(double l,
                                                   uintptr_t n,
                                                   double c,
                                                   SpecschrodOperator **out);

/**
 * Assemble the anharmonic oscillator `nu x^2 + mu x^4` on the real line
 * with an `n`-point sinc grid of step `h`. `mu > 0` is required.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
SpecschrodStatus specschrod_operator_anharmonic(double nu,
                                                double mu,
                                                uintptr_t n,
                                                double h,
                                                SpecschrodOperator **out);

/**
 * Assemble the harmonic oscillator `x^2` on the real line with an `n`-point
 * sinc grid of step `h`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
SpecschrodStatus specschrod_operator_harmonic(uintptr_t n, double h, SpecschrodOperator **out);

/**
 * Interior matrix size of the operator: n for sinc grids, n - 2 for
 * Chebyshev grids (boundary rows deleted). Returns 0 for a null handle.
 *
 * # Safety
 * `op` must be null or a live operator handle.
 */
uintptr_t specschrod_operator_size(const SpecschrodOperator *op);

/**
 * Whether the assembled matrix is exactly symmetric (and the solve will
 * take the orthogonal path). Returns false for a null handle.
 *
 * # Safety
 * `op` must be null or a live operator handle.
 */
bool specschrod_operator_is_symmetric(const SpecschrodOperator *op);

/**
 * Copy the physical abscissae of the interior grid into `buf`. `len` must
 * be at least `specschrod_operator_size(op)`.
 *
 * # Safety
 * `op` must be a live operator handle and `buf` must point to at least
 * `len` writable doubles.
 */
SpecschrodStatus specschrod_operator_nodes(const SpecschrodOperator *op,
                                           double *buf,
                                           uintptr_t len);

/**
 * Release an operator handle. Null is a no-op.
 *
 * # Safety
 * `op` must be null or a handle not freed before; it is dead afterwards.
 */
void specschrod_operator_free(SpecschrodOperator *op);

/**
 * Compute the full spectrum of the operator with default solver settings,
 * taking the orthogonal path when the matrix is symmetric.
 *
 * # Safety
 * `op` must be a live operator handle; `out` must be a valid pointer to
 * writable storage for one pointer.
 */
SpecschrodStatus specschrod_solve(const SpecschrodOperator *op, SpecschrodSolution **out);

/**
 * Number of eigenvalues in the solution (the matrix size). Returns 0 for a
 * null handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
uintptr_t specschrod_solution_len(const SpecschrodSolution *sol);

/**
 * Fetch eigenvalue `i` of the sorted spectrum as `(re, im)`.
 *
 * # Safety
 * `sol` must be a live solution handle; `out_re` and `out_im` must point to
 * writable doubles.
 */
SpecschrodStatus specschrod_solution_value(const SpecschrodSolution *sol,
                                           uintptr_t i,
                                           double *out_re,
                                           double *out_im);

/**
 * Fetch the relative residual `||A v - lambda v|| / ||A||_F` of pair `i`.
 *
 * # Safety
 * `sol` must be a live solution handle; `out` must point to a writable
 * double.
 */
SpecschrodStatus specschrod_solution_residual(const SpecschrodSolution *sol,
                                              uintptr_t i,
                                              double *out);

/**
 * Whether eigenvalue `i` is real within the solver's imaginary tolerance.
 *
 * # Safety
 * `sol` must be a live solution handle; `out` must point to a writable
 * bool.
 */
SpecschrodStatus specschrod_solution_is_real(const SpecschrodSolution *sol, uintptr_t i, bool *out);

/**
 * Largest relative residual over the whole spectrum. NaN for a null
 * handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
double specschrod_solution_max_residual(const SpecschrodSolution *sol);

/**
 * Copy eigenvector column `i` (unit norm, real part for complex pairs)
 * into `buf`. `len` must be at least the operator size.
 *
 * # Safety
 * `sol` must be a live solution handle and `buf` must point to at least
 * `len` writable doubles.
 */
SpecschrodStatus specschrod_solution_vector(const SpecschrodSolution *sol,
                                            uintptr_t i,
                                            double *buf,
                                            uintptr_t len);

/**
 * Copy the real-flagged eigenvalues, ascending, into `buf` and store how
 * many there are in `out_count`. Pass a null `buf` (len 0) to query the
 * count first; with a non-null `buf`, `len` must cover the full count.
 *
 * # Safety
 * `sol` must be a live solution handle; `buf` must be null or point to at
 * least `len` writable doubles; `out_count` must point to a writable
 * size_t.
 */
SpecschrodStatus specschrod_solution_real_values(const SpecschrodSolution *sol,
                                                 double *buf,
                                                 uintptr_t len,
                                                 uintptr_t *out_count);

/**
 * Per-index absolute drift `|lambda_j(a) - lambda_j(b)|` over the first
 * `ne` real eigenvalues of two solutions of the same problem at different
 * discretizations. `deltas` may be null; otherwise it receives `ne`
 * doubles. `out_max` receives the largest drift.
 *
 * # Safety
 * `a` and `b` must be live solution handles; `deltas` must be null or
 * point to at least `ne` writable doubles; `out_max` must point to a
 * writable double.
 */
SpecschrodStatus specschrod_absolute_drift(const SpecschrodSolution *a,
                                           const SpecschrodSolution *b,
                                           uintptr_t ne,
                                           double *deltas,
                                           double *out_max);

/**
 * Release a solution handle. Null is a no-op.
 *
 * # Safety
 * `sol` must be null or a handle not freed before; it is dead afterwards.
 */
void specschrod_solution_free(SpecschrodSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECSCHROD_H */
