#ifndef HUMBERT_H
#define HUMBERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HumbertStatus {
  HUMBERT_STATUS_OK = 0,
  HUMBERT_STATUS_NULL_POINTER = 1,
  HUMBERT_STATUS_INVALID_UTF8 = 2,
  HUMBERT_STATUS_PARSE = 3,
  HUMBERT_STATUS_POLE = 4,
  HUMBERT_STATUS_DOMAIN = 5,
  HUMBERT_STATUS_NO_CONVERGENCE = 6,
  HUMBERT_STATUS_SIGNATURE = 7,
  HUMBERT_STATUS_UNBOUND_SYMBOL = 8,
  HUMBERT_STATUS_UNKNOWN_TARGET = 9,
  HUMBERT_STATUS_CONSTRAINT_VIOLATION = 10,
  HUMBERT_STATUS_IO = 11,
  HUMBERT_STATUS_OUT_OF_RANGE = 12,
  HUMBERT_STATUS_PANIC = 13,
} HumbertStatus;

/**
 * Opaque parameter bindings.
 */
typedef struct HumbertParams HumbertParams;

/**
 * Opaque exact coefficient triangle.
 */
typedef struct HumbertSeries HumbertSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *humbert_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void humbert_string_free(char *s);

/**
 * Empty bindings. Release with [`humbert_params_free`].
 */
struct HumbertParams *humbert_params_new(void);

/**
 * Copies the bindings of a named profile into a new handle.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is writable.
 */
enum HumbertStatus humbert_params_from_profile(const char *name, struct HumbertParams **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void humbert_params_free(struct HumbertParams *p);

/**
 * Binds `symbol` (e.g. `"gamma1"`) to `value` (`"p/q"`, integer or decimal).
 *
 * # Safety
 * `p` is a live handle; the strings are NUL-terminated.
 */
enum HumbertStatus humbert_params_set(struct HumbertParams *p,
                                      const char *symbol,
                                      const char *value);

/**
 * Float value of a bound parameter.
 *
 * # Safety
 * `p` is a live handle; `symbol` is NUL-terminated; `out` is writable.
 */
enum HumbertStatus humbert_params_get(const struct HumbertParams *p,
                                      const char *symbol,
                                      double *out);

/**
 * Evaluates `kind` at `(x, y)` by its series with relative tolerance `tol`.
 *
 * # Safety
 * `kind` is NUL-terminated; `p` is a live handle; `out` is writable.
 */
enum HumbertStatus humbert_eval(const char *kind,
                                const struct HumbertParams *p,
                                double x,
                                double y,
                                double tol,
                                double *out);

/**
 * Exact series of `kind` through total degree `degree`.
 *
 * # Safety
 * `kind` is NUL-terminated; `p` is a live handle; `out` is writable.
 */
enum HumbertStatus humbert_series_new(const char *kind,
                                      const struct HumbertParams *p,
                                      size_t degree,
                                      struct HumbertSeries **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void humbert_series_free(struct HumbertSeries *s);

/**
 * Total degree of the triangle, or 0 for a null handle.
 *
 * # Safety
 * `s` is a live handle or null.
 */
size_t humbert_series_degree(const struct HumbertSeries *s);

/**
 * Coefficient of `x^m y^n` as a double.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum HumbertStatus humbert_series_coeff(const struct HumbertSeries *s,
                                        size_t m,
                                        size_t n,
                                        double *out);

/**
 * Coefficient of `x^m y^n` as an exact `"p/q"` string.
 *
 * # Safety
 * `s` is a live handle; `out` is writable. Free the string with
 * [`humbert_string_free`].
 */
enum HumbertStatus humbert_series_coeff_exact(const struct HumbertSeries *s,
                                              size_t m,
                                              size_t n,
                                              char **out);

/**
 * The whole triangle as JSON `{"degree": N, "coeffs": [[m, n, "p/q"], ...]}`.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum HumbertStatus humbert_series_to_json(const struct HumbertSeries *s, char **out);

/**
 * Exact check of a decomposition formula; writes the report as JSON.
 * A null `p` uses the `generic-A` profile. The status is `Ok` whenever a
 * report was produced, pass or fail.
 *
 * # Safety
 * `id` is NUL-terminated; `p` is a live handle or null; `out` is writable.
 */
enum HumbertStatus humbert_verify_formula(const char *id,
                                          const struct HumbertParams *p,
                                          size_t degree,
                                          char **out);

/**
 * Exact check of an operator identity; see [`humbert_verify_formula`].
 *
 * # Safety
 * As for [`humbert_verify_formula`].
 */
enum HumbertStatus humbert_verify_identity(const char *id,
                                           const struct HumbertParams *p,
                                           size_t degree,
                                           char **out);

/**
 * Cross-checks one integral representation at `(x, y)` against its
 * series. A null `p` uses the `integral-A` profile; `tol <= 0` picks the
 * default tolerance for the representation.
 *
 * # Safety
 * `id` is NUL-terminated; `p` is a live handle or null; `out` is writable.
 */
enum HumbertStatus humbert_integral_check(const char *id,
                                          const struct HumbertParams *p,
                                          double x,
                                          double y,
                                          double tol,
                                          char **out);

/**
 * Library version as a static string.
 */
const char *humbert_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HUMBERT_H */
