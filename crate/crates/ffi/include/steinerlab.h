#ifndef STEINERLAB_H
#define STEINERLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Binary operations for [`sl_complex_binary`].
typedef enum SlBinaryOp {
  SL_BINARY_OP_TENSOR = 0,
  SL_BINARY_OP_JOIN = 1,
  SL_BINARY_OP_ANTIJOIN = 2,
} SlBinaryOp;

// Retraction families for [`sl_retraction`].
typedef enum SlRetraction {
  // Oriental onto the cube, parameter `n`.
  SL_RETRACTION_XI = 0,
  // Cube onto the oriental by the quotient, parameter `n`.
  SL_RETRACTION_Q_CUBE = 1,
  // Oriental onto the suspended oriental, parameter `n`.
  SL_RETRACTION_ELL = 2,
  // Wedge of orientals into an oriental, parameters `n` and `m`.
  SL_RETRACTION_ZETA = 3,
} SlRetraction;

// Shape families for [`sl_complex_shape`].
typedef enum SlShape {
  SL_SHAPE_UNIT = 0,
  SL_SHAPE_INTERVAL = 1,
  SL_SHAPE_DISK = 2,
  SL_SHAPE_BOUNDARY_DISK = 3,
  SL_SHAPE_CUBE = 4,
  SL_SHAPE_ORIENTAL = 5,
  SL_SHAPE_ANTIORIENTAL = 6,
} SlShape;

// Result codes. `Ok` is zero; library errors keep their names.
typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_PANIC = 3,
  SL_STATUS_INVALID_ARGUMENT = 4,
  SL_STATUS_MALFORMED = 10,
  SL_STATUS_DEGREE_MISMATCH = 11,
  SL_STATUS_SOURCE_TARGET_MISMATCH = 12,
  SL_STATUS_SOURCE_MISMATCH = 13,
  SL_STATUS_NON_BASED_PUSHOUT = 14,
  SL_STATUS_BAD_DIMS = 15,
  SL_STATUS_BAD_BASEPOINT = 16,
  SL_STATUS_EMPTY = 17,
  SL_STATUS_DEGREE_ZERO = 18,
  SL_STATUS_NEGATIVE_ENTRY = 19,
  SL_STATUS_BAD_LEVEL = 20,
  SL_STATUS_NOT_COMPOSABLE = 21,
  SL_STATUS_INVALID_RESULT = 22,
  SL_STATUS_UNSUPPORTED_SPEC = 23,
  SL_STATUS_PARSE_ERROR = 24,
  SL_STATUS_VALIDATION_ERROR = 25,
  SL_STATUS_TOO_LARGE = 26,
} SlStatus;

// Unary operations for [`sl_complex_unary`].
typedef enum SlUnaryOp {
  SL_UNARY_OP_SUSPENSION = 0,
  SL_UNARY_OP_ANTISUSPENSION = 1,
  SL_UNARY_OP_OP = 2,
  SL_UNARY_OP_CO = 3,
  SL_UNARY_OP_COOP = 4,
} SlUnaryOp;

// Opaque based complex.
typedef struct SlComplex SlComplex;

// Opaque chain map.
typedef struct SlMap SlMap;

// Opaque list of named checks.
typedef struct SlReport SlReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. Valid until the
// next call into the library from the same thread.
const char *sl_last_error(void);

// Frees a string returned by the library.
//
// # Safety
// `s` must be null or a pointer returned by this library, freed once.
void sl_string_free(char *s);

// Builds a library shape. `n` is ignored for the unit and the interval.
//
// # Safety
// `out` must be a valid pointer.
enum SlStatus sl_complex_shape(enum SlShape shape, uintptr_t n, struct SlComplex **out);

// # Safety
// `a` and `b` must be valid handles and `out` a valid pointer.
enum SlStatus sl_complex_binary(enum SlBinaryOp op,
                                const struct SlComplex *a,
                                const struct SlComplex *b,
                                struct SlComplex **out);

// # Safety
// `a` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_complex_unary(enum SlUnaryOp op,
                               const struct SlComplex *a,
                               struct SlComplex **out);

// Parses and validates a complex document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum SlStatus sl_complex_parse_json(const char *json, struct SlComplex **out);

// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_complex_emit_json(const struct SlComplex *c, char **out);

// Number of generators in `degree`.
//
// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_complex_count(const struct SlComplex *c, uintptr_t degree, uintptr_t *out);

// Highest degree with a generator, or -1 for the zero complex.
//
// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_complex_top_degree(const struct SlComplex *c, int64_t *out);

// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_complex_validate(const struct SlComplex *c, struct SlReport **out);

// Steiner checks: the complex axioms plus unitality and loop-freeness.
//
// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_complex_is_steiner(const struct SlComplex *c, struct SlReport **out);

// # Safety
// `c` must be null or a handle from this library, freed once.
void sl_complex_free(struct SlComplex *c);

// Builds the embedding and retraction of a family. `m` is used by `Zeta` only.
//
// # Safety
// `embed` and `retract` must be valid pointers.
enum SlStatus sl_retraction(enum SlRetraction which,
                            uintptr_t n,
                            uintptr_t m,
                            struct SlMap **embed,
                            struct SlMap **retract);

// Checks both maps, that retract ∘ embed is the identity and that
// embed ∘ retract is idempotent.
//
// # Safety
// `which` parameters as in [`sl_retraction`]; `out` must be a valid pointer.
enum SlStatus sl_retraction_verify(enum SlRetraction which,
                                   uintptr_t n,
                                   uintptr_t m,
                                   struct SlReport **out);

// The composite `g ∘ f`.
//
// # Safety
// `f` and `g` must be valid handles and `out` a valid pointer.
enum SlStatus sl_map_compose(const struct SlMap *f, const struct SlMap *g, struct SlMap **out);

// # Safety
// `f` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_map_source(const struct SlMap *f, struct SlComplex **out);

// # Safety
// `f` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_map_target(const struct SlMap *f, struct SlComplex **out);

// # Safety
// `f` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_map_validate(const struct SlMap *f, struct SlReport **out);

// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum SlStatus sl_map_parse_json(const char *json, struct SlMap **out);

// # Safety
// `f` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_map_emit_json(const struct SlMap *f, char **out);

// # Safety
// `f` must be null or a handle from this library, freed once.
void sl_map_free(struct SlMap *f);

// 1 if every check passed, 0 otherwise; 0 for a null handle.
//
// # Safety
// `r` must be null or a valid handle.
int32_t sl_report_passed(const struct SlReport *r);

// # Safety
// `r` must be null or a valid handle.
uintptr_t sl_report_len(const struct SlReport *r);

// Name of check `i`; 1 in `passed` if it passed.
//
// # Safety
// `r` must be a valid handle; `name` and `passed` valid pointers.
enum SlStatus sl_report_check(const struct SlReport *r, uintptr_t i, char **name, int32_t *passed);

// The report rendered as text, one line per check.
//
// # Safety
// `r` must be a valid handle and `out` a valid pointer.
enum SlStatus sl_report_text(const struct SlReport *r, char **out);

// # Safety
// `r` must be null or a handle from this library, freed once.
void sl_report_free(struct SlReport *r);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* STEINERLAB_H */
