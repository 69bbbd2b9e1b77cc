/* C ABI for the vlk virtual-link invariant library. */

#ifndef VLK_H
#define VLK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible ABI call.
 */
typedef enum VlkStatus {
  /**
   * The call succeeded and the out-parameters are valid.
   */
  VLK_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  VLK_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input text was not valid UTF-8.
   */
  VLK_STATUS_INVALID_UTF8 = 2,
  /**
   * Input text was not a well-formed diagram code.
   */
  VLK_STATUS_PARSE_ERROR = 3,
  /**
   * A numeric argument was rejected (for example a non-prime modulus).
   */
  VLK_STATUS_BAD_ARGUMENT = 4,
  /**
   * An internal invariant failed; the out-parameters are untouched.
   */
  VLK_STATUS_INTERNAL_ERROR = 5,
} VlkStatus;

/**
 * Opaque diagram handle. Allocate via parsing, release with
 * [`vlk_diagram_free`].
 */
typedef struct VlkDiagram VlkDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse crossing-code ("VLD") text into a new diagram handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_parse(const char *text, struct VlkDiagram **out);

/**
 * Parse a one-line Gauss code (e.g. `O1+U2+O3+U1+O2+U3+`) into a new
 * diagram handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_parse_gauss(const char *text, struct VlkDiagram **out);

/**
 * Release a diagram handle. NULL is ignored.
 *
 * # Safety
 * `diagram` must be NULL or a handle produced by this library that has not
 * been freed already.
 */
void vlk_diagram_free(struct VlkDiagram *diagram);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string produced by this library that has not been
 * freed already.
 */
void vlk_string_free(char *s);

/**
 * Number of classical crossings.
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_crossing_count(const struct VlkDiagram *diagram, size_t *out);

/**
 * Writhe: positive minus negative crossings.
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_writhe(const struct VlkDiagram *diagram, int64_t *out);

/**
 * Number of link components (closed strands plus free loops).
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_component_count(const struct VlkDiagram *diagram, size_t *out);

/**
 * New handle for the mirror image (all crossing signs flipped by exchanging
 * over- and under-strands).
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_mirror(const struct VlkDiagram *diagram, struct VlkDiagram **out);

/**
 * Crossing-code text of the diagram (round-trips through
 * [`vlk_diagram_parse`]).
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_diagram_serialize(const struct VlkDiagram *diagram, char **out);

/**
 * Canonical string form of the two-variable polynomial invariant, e.g.
 * `"-1 + 1*x*y"`; `"0"` for the zero polynomial.
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_conway_canonical(const struct VlkDiagram *diagram, char **out);

/**
 * Canonical string form of the unit-normalized one-variable polynomial
 * invariant in `t`.
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_alexander_canonical(const struct VlkDiagram *diagram, char **out);

/**
 * Full two-variable invariant record as one JSON object (same shape as the
 * CLI's JSON output, minus the file name).
 *
 * # Safety
 * `diagram` must be a live handle and `out` a valid pointer.
 */
enum VlkStatus vlk_conway_json(const struct VlkDiagram *diagram, char **out);

/**
 * Full one-variable invariant record as one JSON object, refined modulo
 * each of the `n_primes` moduli in `primes` (may be NULL when `n_primes`
 * is 0). Rejects non-prime moduli with [`VlkStatus::BadArgument`].
 *
 * # Safety
 * `diagram` must be a live handle, `out` a valid pointer, and `primes`
 * must point to at least `n_primes` readable values (or be NULL when
 * `n_primes` is 0).
 */
enum VlkStatus vlk_alexander_json(const struct VlkDiagram *diagram,
                                  const uint64_t *primes,
                                  size_t n_primes,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VLK_H */
