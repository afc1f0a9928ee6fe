#ifndef TANGLE_FFI_H
#define TANGLE_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TangleStatus {
  TANGLE_STATUS_OK = 0,
  TANGLE_STATUS_NOT_PERFECT = 1,
  TANGLE_STATUS_CONTAINS321 = 2,
  TANGLE_STATUS_INVALID_INPUT = 3,
  TANGLE_STATUS_NULL_POINTER = 4,
  TANGLE_STATUS_INTERNAL = 5,
} TangleStatus;

/**
 * Opaque tangle handle.
 */
typedef struct TangleDiagram TangleDiagram;

/**
 * Opaque permutation handle.
 */
typedef struct TanglePermutation TanglePermutation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses whitespace- or comma-separated one-line notation.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum TangleStatus tangle_permutation_parse(const char *text, struct TanglePermutation **out);

/**
 * # Safety
 * `p` must come from this library and not be used afterwards; null is ignored.
 */
void tangle_permutation_free(struct TanglePermutation *p);

/**
 * Number of entries, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
uintptr_t tangle_permutation_len(const struct TanglePermutation *p);

/**
 * Decides perfection. Returns `OK` with the marking as text (lines
 * `element: marks`, `-` for empty) when perfect and `NOT_PERFECT` with a
 * reason in the error message otherwise. `marking_out` may be null.
 *
 * # Safety
 * `p` must be a live handle; `marking_out` null or writable.
 */
enum TangleStatus tangle_recognize(const struct TanglePermutation *p, char **marking_out);

/**
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_build_direct(const struct TanglePermutation *p,
                                      struct TangleDiagram **out);

/**
 * # Safety
 * `p` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_build_perfect(const struct TanglePermutation *p,
                                       struct TangleDiagram **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` writable.
 */
enum TangleStatus tangle_diagram_from_json(const char *json, struct TangleDiagram **out);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_diagram_to_json(const struct TangleDiagram *t, char **out);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_diagram_to_svg(const struct TangleDiagram *t,
                                        uint32_t unit,
                                        bool rounded,
                                        bool colored,
                                        char **out);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_diagram_corner_count(const struct TangleDiagram *t, uintptr_t *out);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_diagram_is_simple(const struct TangleDiagram *t, bool *out);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_diagram_is_direct(const struct TangleDiagram *t, bool *out);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum TangleStatus tangle_diagram_is_perfect(const struct TangleDiagram *t, bool *out);

/**
 * # Safety
 * `t` must come from this library and not be used afterwards; null is ignored.
 */
void tangle_diagram_free(struct TangleDiagram *t);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void tangle_string_free(char *s);

/**
 * Static description of a status code.
 */
const char *tangle_status_str(enum TangleStatus status);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *tangle_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGLE_FFI_H */
