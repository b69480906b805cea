#ifndef ALPHASECTORS_H
#define ALPHASECTORS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum AsStatus {
  AS_STATUS_OK = 0,
  AS_STATUS_NULL_POINTER = 1,
  AS_STATUS_INVALID_ARGUMENT = 2,
  AS_STATUS_INVALID_SPEC = 3,
  /**
   * The function has a pole at the argument.
   */
  AS_STATUS_POLE = 4,
  AS_STATUS_NOT_CONVERGED = 5,
  /**
   * The winding count was not close to an integer.
   */
  AS_STATUS_INCONCLUSIVE = 6,
  AS_STATUS_PANIC = 7,
  AS_STATUS_UTF8 = 8,
  /**
   * Index or radius outside the valid range.
   */
  AS_STATUS_OUT_OF_RANGE = 9,
} AsStatus;

/**
 * Verifier selection for `as_verify`.
 */
typedef enum AsTheorem {
  AS_THEOREM_AUTO = 0,
  AS_THEOREM_MAIN = 1,
  AS_THEOREM_MAIN2 = 2,
  AS_THEOREM_FIRST = 3,
  AS_THEOREM_K2 = 4,
} AsTheorem;

/**
 * Opaque function handle.
 */
typedef struct AsFunction AsFunction;

/**
 * Opaque list of alpha-points sorted by modulus.
 */
typedef struct AsPointSet AsPointSet;

typedef struct AsComplex {
  double re;
  double im;
} AsComplex;

/**
 * One alpha-point.
 */
typedef struct AsPoint {
  double re;
  double im;
  double modulus;
  uint32_t sector;
  /**
   * 1 when the point lies on the ray starting sector `sector`.
   */
  int32_t boundary;
  uint32_t multiplicity;
  double residual;
} AsPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *as_last_error(void);

/**
 * Parses a JSON spec (`{"type":"rational",...}` or `{"type":"series",...}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AsStatus as_function_from_json(const char *json, struct AsFunction **out);

/**
 * `z^p prod(z^k + a_i) / prod(z^k - b_j)`.
 *
 * # Safety
 * `a` and `b` must point to `na` and `nb` doubles (may be null when the
 * count is 0); `out` must be valid.
 */
enum AsStatus as_function_rational(int64_t p,
                                   uint32_t k,
                                   const double *a,
                                   size_t na,
                                   const double *b,
                                   size_t nb,
                                   struct AsFunction **out);

/**
 * # Safety
 * `f` must come from this library and not be used afterwards.
 */
void as_function_free(struct AsFunction *f);

/**
 * Evaluates the function; `AS_STATUS_POLE` at a pole.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum AsStatus as_function_evaluate(const struct AsFunction *f,
                                   struct AsComplex z,
                                   struct AsComplex *out);

/**
 * Solutions of `F(z) = alpha` with `0 < |z| <= radius`.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum AsStatus as_alpha_points(const struct AsFunction *f,
                              struct AsComplex alpha,
                              double radius,
                              struct AsPointSet **out);

/**
 * Number of points; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t as_point_set_len(const struct AsPointSet *s);

/**
 * # Safety
 * `s` must be a live handle and `out` valid.
 */
enum AsStatus as_point_set_get(const struct AsPointSet *s, size_t index, struct AsPoint *out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void as_point_set_free(struct AsPointSet *s);

/**
 * Runs a verifier (`theorem` is an `AsTheorem` value); `*passed` is 1 when
 * every predicate holds.
 *
 * # Safety
 * Handles must be live and `passed` valid.
 */
enum AsStatus as_verify(const struct AsFunction *f,
                        const struct AsPointSet *points,
                        struct AsComplex alpha,
                        int32_t theorem,
                        int32_t *passed);

/**
 * Sector of the next point by modulus, given the sectors of `alpha` and
 * of the current point.
 *
 * # Safety
 * `out` must be valid.
 */
enum AsStatus as_predict_next_sector(int64_t p,
                                     uint32_t k,
                                     uint32_t alpha_sector,
                                     uint32_t current,
                                     uint32_t *out);

/**
 * Argument-principle counts per sector over `r_in < |z| < r_out`; `counts`
 * receives `2k` entries.
 *
 * # Safety
 * `f` must be a live handle and `counts` must hold `len` entries.
 */
enum AsStatus as_census(const struct AsFunction *f,
                        struct AsComplex alpha,
                        double r_in,
                        double r_out,
                        uint32_t *counts,
                        size_t len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ALPHASECTORS_H */
