#ifndef SUPERGEOM_H
#define SUPERGEOM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  SG_STATUS_OK = 0,
  /**
   * Malformed input: parse errors, bad JSON, invalid arguments.
   */
  SG_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Well-formed input outside the domain of the operation.
   */
  SG_STATUS_DOMAIN_ERROR = 2,
  /**
   * The Gröbner budget was exhausted.
   */
  SG_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  SG_STATUS_NULL_POINTER = 4,
  /**
   * The library panicked; this is a bug.
   */
  SG_STATUS_INTERNAL = 5,
} sg_status;

/**
 * An ideal in the coordinate ring of a setting.
 */
typedef struct sg_ideal sg_ideal;

/**
 * A polynomial in the coordinate ring of a setting.
 */
typedef struct sg_poly sg_poly;

/**
 * Algebra type and space, e.g. `gl(2|1)` on the torus.
 */
typedef struct sg_setting sg_setting;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or the empty string.
 * The pointer stays valid until the next call on this thread.
 */
const char *sg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sg_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *sg_version(void);

/**
 * Creates a setting from a type name such as `gl(2|1)`, `osp(5|4)` or
 * `q(3)` and a space, `additive` or `torus`.
 *
 * # Safety
 * `ty` and `space` must be null or NUL-terminated strings; `out_setting` must be
 * null or writable.
 */
sg_status sg_setting_new(const char *ty, const char *space, sg_setting **out_setting);

/**
 * # Safety
 * `s` must be null or a live handle from [`sg_setting_new`].
 */
void sg_setting_free(sg_setting *s);

/**
 * Dimension of the setting's space.
 *
 * # Safety
 * `s` must be null or a live handle; `out_dim` must be null or writable.
 */
sg_status sg_setting_dim(const sg_setting *s, size_t *out_dim);

/**
 * Parses a polynomial in the setting's variables (`X1, Y1, …` additively,
 * `x1, y1, …` on the torus).
 *
 * # Safety
 * Pointers must be null or valid as documented on the other calls.
 */
sg_status sg_poly_parse(const sg_setting *s, const char *src, sg_poly **out_poly);

/**
 * # Safety
 * `p` must be null or a live polynomial handle.
 */
void sg_poly_free(sg_poly *p);

/**
 * Canonical text of a polynomial; release with [`sg_string_free`].
 *
 * # Safety
 * `p` must be null or a live handle; `out_text` must be null or writable.
 */
sg_status sg_poly_to_string(const sg_poly *p, char **out_text);

/**
 * Evaluates a polynomial at a point given as JSON: an array of rationals
 * such as `["1/2", 3]`, or an object with `eps`/`delta` (`x`/`y`) arrays.
 * The value is returned as text; release with [`sg_string_free`].
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_poly_eval(const sg_setting *s,
                       const sg_poly *p,
                       const char *point_json,
                       char **out_value);

/**
 * Membership oracle for the supersymmetric invariants. With `strict`,
 * the condition is checked along every root rather than one per W-orbit.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_is_supersymmetric(const sg_setting *s,
                               const sg_poly *p,
                               bool strict,
                               bool *out_member);

/**
 * The distinguished element `T` of the setting.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_t_element(const sg_setting *s, sg_poly **out_poly);

/**
 * Image under the evaluation map to the reduced setting. Fails with
 * `DomainError` when the reduced rank is too small.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_ev(const sg_setting *s, const sg_poly *p, sg_poly **out_poly);

/**
 * Atypicality of a point (JSON as in [`sg_poly_eval`]).
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_atyp(const sg_setting *s, const char *point_json, size_t *out_atyp);

/**
 * Whether two points lie in the same groupoid orbit.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_equivalent(const sg_setting *s,
                        const char *a_json,
                        const char *b_json,
                        bool *out_equivalent);

/**
 * Ideal from a JSON array of generator strings, e.g. `["X1+Y1"]`.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_ideal_new(const sg_setting *s, const char *gens_json, sg_ideal **out_ideal);

/**
 * # Safety
 * `i` must be null or a live ideal handle.
 */
void sg_ideal_free(sg_ideal *i);

/**
 * Ideal membership with the default budget.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_ideal_contains(const sg_ideal *i, const sg_poly *p, bool *out_member);

/**
 * Reduced grevlex Gröbner basis as a JSON array of strings; release with
 * [`sg_string_free`].
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_ideal_groebner(const sg_ideal *i, char **out_json);

/**
 * Runs the command-line front end on a JSON array of arguments (without
 * the program name), e.g. `["--type", "gl(2|1)", "describe"]`. The JSON
 * document it prints is returned in `out_json` and its exit code in
 * `out_code`; a nonzero exit code is not a call failure. Usage errors
 * yield the usage text instead of JSON, with exit code 1.
 *
 * # Safety
 * Pointers must be null or valid.
 */
sg_status sg_cli_run(const char *args_json, char **out_json, int32_t *out_code);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUPERGEOM_H */
