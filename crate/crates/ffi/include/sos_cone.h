#ifndef SOS_CONE_H
#define SOS_CONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SosStatus {
  SOS_STATUS_OK = 0,
  SOS_STATUS_NULL_POINTER = 1,
  SOS_STATUS_INVALID_UTF8 = 2,
  SOS_STATUS_PARSE = 3,
  SOS_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The operation ran but found nothing (e.g. no shift up to the bound).
   */
  SOS_STATUS_NOT_FOUND = 5,
  /**
   * The Gram oracle refused the problem (basis too large).
   */
  SOS_STATUS_ORACLE = 6,
  SOS_STATUS_PANIC = 7,
} SosStatus;

/**
 * Oracle verdict; values match the CLI exit codes of `certify`.
 */
typedef enum SosOracleStatus {
  SOS_ORACLE_STATUS_CERTIFIED_SOS = 0,
  SOS_ORACLE_STATUS_LIKELY_NOT_SOS = 2,
  SOS_ORACLE_STATUS_INCONCLUSIVE = 3,
} SosOracleStatus;

/**
 * A polynomial with exact rational coefficients.
 */
typedef struct SosPolynomial SosPolynomial;

/**
 * Outcome of one sufficient condition.
 */
typedef struct SosReport SosReport;

/**
 * Outcome of the Gram-matrix oracle.
 */
typedef struct SosVerdict SosVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses text such as `"1 + x1^4 - 3/2*x1*x2"` in `nvars` variables.
 * `half_degree == 0` picks `ceil(deg/2)` (at least 1).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SosStatus sos_polynomial_parse(const char *text,
                                    size_t nvars,
                                    uint32_t half_degree,
                                    struct SosPolynomial **out);

/**
 * Reads one polynomial object `{"n":..,"d":..,"terms":[..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SosStatus sos_polynomial_from_json(const char *json, struct SosPolynomial **out);

/**
 * # Safety
 * `p` must come from this library and not be used afterwards. Null is a no-op.
 */
void sos_polynomial_free(struct SosPolynomial *p);

/**
 * Canonical text form; free with [`sos_string_free`].
 *
 * # Safety
 * `p` must be a live polynomial and `out` a valid pointer.
 */
enum SosStatus sos_polynomial_to_text(const struct SosPolynomial *p, char **out);

/**
 * # Safety
 * `p` must be a live polynomial and `out` a valid pointer.
 */
enum SosStatus sos_polynomial_to_json(const struct SosPolynomial *p, char **out);

/**
 * # Safety
 * `p` must be a live polynomial and `out` a valid pointer.
 */
enum SosStatus sos_check_theorem1(const struct SosPolynomial *p, struct SosReport **out);

/**
 * `weights` is a comma-separated list such as `"1/4,3/4"`, one entry per
 * band; null means the uniform split.
 *
 * # Safety
 * `p` must be a live polynomial, `weights` null or NUL-terminated, `out` valid.
 */
enum SosStatus sos_check_corollary1(const struct SosPolynomial *p,
                                    const char *weights,
                                    struct SosReport **out);

/**
 * # Safety
 * `p` must be a live polynomial and `out` a valid pointer.
 */
enum SosStatus sos_check_corollary2(const struct SosPolynomial *p, struct SosReport **out);

/**
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum SosStatus sos_report_accepted(const struct SosReport *r, bool *out);

/**
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum SosStatus sos_report_to_json(const struct SosReport *r, char **out);

/**
 * # Safety
 * `r` must come from this library and not be used afterwards. Null is a no-op.
 */
void sos_report_free(struct SosReport *r);

/**
 * Runs the Gram-matrix oracle. `tol <= 0` or `max_iter == 0` select the
 * library defaults.
 *
 * # Safety
 * `p` must be a live polynomial and `out` a valid pointer.
 */
enum SosStatus sos_certify(const struct SosPolynomial *p,
                           double tol,
                           size_t max_iter,
                           struct SosVerdict **out);

/**
 * # Safety
 * `v` must be a live verdict and `out` a valid pointer.
 */
enum SosStatus sos_verdict_status(const struct SosVerdict *v, enum SosOracleStatus *out);

/**
 * Largest residual of the coefficient-matching equations.
 *
 * # Safety
 * `v` must be a live verdict and `out` a valid pointer.
 */
enum SosStatus sos_verdict_residual(const struct SosVerdict *v, double *out);

/**
 * # Safety
 * `v` must be a live verdict and `out` a valid pointer.
 */
enum SosStatus sos_verdict_to_json(const struct SosVerdict *v, char **out);

/**
 * # Safety
 * `v` must come from this library and not be used afterwards. Null is a no-op.
 */
void sos_verdict_free(struct SosVerdict *v);

/**
 * Smallest constant `M` (to within 1/1024) in `[0, m_max]` with `f + M`
 * certified by the oracle, written as `"p"` or `"p/q"`. Returns
 * [`SosStatus::NotFound`] and a null string when the bound is too small.
 *
 * # Safety
 * `p` must be a live polynomial, `m_max` NUL-terminated, `out` valid.
 */
enum SosStatus sos_find_shift(const struct SosPolynomial *p, const char *m_max, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is a no-op.
 */
void sos_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *sos_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOS_CONE_H */
