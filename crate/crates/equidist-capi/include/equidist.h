/* C interface to the equidist library. */

#ifndef EQUIDIST_H
#define EQUIDIST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C-ABI call.
 */
typedef enum EqStatus {
  EQ_STATUS_OK = 0,
  /**
   * A parameter was rejected (bad alphabet, distance, shape, ...).
   */
  EQ_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The input string was not a valid JSON code.
   */
  EQ_STATUS_PARSE_ERROR = 2,
  /**
   * The requested object exceeds a library size cap.
   */
  EQ_STATUS_CAP_EXCEEDED = 3,
  /**
   * The search ran out of nodes before proving optimality.
   */
  EQ_STATUS_BUDGET_EXHAUSTED = 4,
  /**
   * A required pointer argument was NULL.
   */
  EQ_STATUS_NULL_POINTER = 5,
} EqStatus;

/**
 * Opaque handle to a code.
 */
typedef struct EqCode EqCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a JSON code (`{"q":..,"n":..,"words":[[..],..]}`) into a handle.
 *
 * # Safety
 * `text` must point to a NUL-terminated string and `out` to writable
 * pointer-sized storage; on `EQ_STATUS_OK` the caller owns the handle.
 */
enum EqStatus eq_code_from_json(const char *text, struct EqCode **out);

/**
 * Serialize a handle back to the JSON code format. Returns NULL when
 * `code` is NULL. The result must be released with [`eq_string_free`].
 *
 * # Safety
 * `code` must be NULL or a live handle from this library.
 */
char *eq_code_to_json(const struct EqCode *code);

/**
 * Release a handle. NULL is ignored.
 *
 * # Safety
 * `code` must be NULL or a handle not yet freed.
 */
void eq_code_free(struct EqCode *code);

/**
 * Release a string produced by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void eq_string_free(char *s);

/**
 * Build the simplex code over GF(q) in dimension k.
 *
 * # Safety
 * `out` must point to writable pointer-sized storage.
 */
enum EqStatus eq_simplex_code(uint32_t q, uint32_t k, struct EqCode **out);

/**
 * Build the length-n sunflower code of distance d over alphabet size q.
 *
 * # Safety
 * `out` must point to writable pointer-sized storage.
 */
enum EqStatus eq_sunflower_code(uintptr_t n, uintptr_t d, uint32_t q, struct EqCode **out);

/**
 * Alphabet size of the code, or 0 when `code` is NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
uint32_t eq_code_q(const struct EqCode *code);

/**
 * Word length of the code, or 0 when `code` is NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
uintptr_t eq_code_length(const struct EqCode *code);

/**
 * Number of words in the code, or 0 when `code` is NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
uintptr_t eq_code_size(const struct EqCode *code);

/**
 * True when all pairwise distances agree (vacuously for fewer than two
 * words). `distance_out`, if non-NULL, receives the common distance, or -1
 * when there is none to report.
 *
 * # Safety
 * `code` must be NULL or a live handle; `distance_out` NULL or writable.
 */
bool eq_is_equidistant(const struct EqCode *code, int64_t *distance_out);

/**
 * Minimum over the applicable size bounds at (n, q, d).
 *
 * # Safety
 * `out` must point to writable storage for a 64-bit value.
 */
enum EqStatus eq_best_bound(uint64_t n, uint32_t q, uint64_t d, uint64_t *out);

/**
 * Exhaustive maximum equidistant code size at (n, q, d). A `budget` of 0
 * selects the default node budget. On `EQ_STATUS_OK` the optimum is proven;
 * on `EQ_STATUS_BUDGET_EXHAUSTED` the outputs hold the best incumbent.
 *
 * # Safety
 * `optimum_out` and `proven_out` must be NULL or point to writable storage.
 */
enum EqStatus eq_max_equidistant(uintptr_t n,
                                 uint32_t q,
                                 uintptr_t d,
                                 uint64_t budget,
                                 uintptr_t *optimum_out,
                                 bool *proven_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUIDIST_H */
