#ifndef TWDR_H
#define TWDR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum TwdrStatus {
  TWDR_STATUS_OK = 0,
  TWDR_STATUS_NULL_POINTER = 1,
  TWDR_STATUS_INVALID_UTF8 = 2,
  TWDR_STATUS_PARSE = 3,
  TWDR_STATUS_NON_ISOLATED = 4,
  TWDR_STATUS_COMPUTATION = 5,
  TWDR_STATUS_PANIC = 6,
} TwdrStatus;

/**
 * Jacobian data of one polynomial.
 */
typedef struct TwdrContext TwdrContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `poly` in `nvars` variables (0 infers) and builds its Jacobian
 * context.
 *
 * # Safety
 * `poly` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TwdrStatus twdr_context_new(const char *poly, uint32_t nvars, struct TwdrContext **out);

/**
 * # Safety
 * `ctx` must come from [`twdr_context_new`] and not be used afterwards.
 */
void twdr_context_free(struct TwdrContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TwdrStatus twdr_context_milnor_number(const struct TwdrContext *ctx, uint64_t *out);

/**
 * Monodromy datum as a JSON array of parts; free with
 * [`twdr_string_free`].
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TwdrStatus twdr_context_monodromy_json(const struct TwdrContext *ctx, char **out);

/**
 * Full verification report as JSON, with the exit code the command line
 * would return.
 *
 * # Safety
 * `poly` must be a NUL-terminated string; `out` and `exit_code` valid
 * pointers.
 */
enum TwdrStatus twdr_verify_json(const char *poly, uint32_t nvars, char **out, int32_t *exit_code);

/**
 * Rank of the nearby-cycle model of `t = x^μ`.
 *
 * # Safety
 * `mu` must point to `len` readable values and `out` be valid.
 */
enum TwdrStatus twdr_koszul_rank(const uint64_t *mu, uintptr_t len, uint64_t *out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void twdr_string_free(char *s);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into the library from the same thread.
 */
const char *twdr_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWDR_H */
