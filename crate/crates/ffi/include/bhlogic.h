#ifndef BHLOGIC_H
#define BHLOGIC_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of a call.
 */
typedef enum BhStatus {
  BH_STATUS_OK = 0,
  BH_STATUS_NULL_POINTER = 1,
  BH_STATUS_INVALID_UTF8 = 2,
  BH_STATUS_PARSE_ERROR = 3,
  BH_STATUS_INVALID_ARGUMENT = 4,
  BH_STATUS_LIMIT_EXCEEDED = 5,
  BH_STATUS_PANIC = 6,
} BhStatus;

/**
 * A dense model: a carrier with a valuation.
 */
typedef struct BhDenseModel BhDenseModel;

/**
 * A parsed formula.
 */
typedef struct BhFormula BhFormula;

/**
 * A finite betweenness frame.
 */
typedef struct BhFrame BhFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *bh_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void bh_string_free(char *s);

/**
 * Parses formula text, or the name of a built-in formula such as `HB4`.
 *
 * # Safety
 * `input` is a NUL-terminated string; `out` is valid for a write.
 */
enum BhStatus bh_formula_parse(const char *input, struct BhFormula **out);

/**
 * Canonical text of a formula, to be released with [`bh_string_free`].
 *
 * # Safety
 * `f` is a live formula handle; `out` is valid for a write.
 */
enum BhStatus bh_formula_to_string(const struct BhFormula *f, char **out);

/**
 * Whether the formula contains no propositional variables.
 *
 * # Safety
 * `f` is a live formula handle; `out` is valid for a write.
 */
enum BhStatus bh_formula_is_pure(const struct BhFormula *f, bool *out);

/**
 * # Safety
 * `f` is null or a formula handle not yet freed.
 */
void bh_formula_free(struct BhFormula *f);

/**
 * An empty frame on `worlds` worlds, at most 128.
 *
 * # Safety
 * `out` is valid for a write.
 */
enum BhStatus bh_frame_new(uintptr_t worlds, struct BhFrame **out);

/**
 * Reads a frame file (`worlds N` and `B x y z` lines).
 *
 * # Safety
 * `input` is a NUL-terminated string; `out` is valid for a write.
 */
enum BhStatus bh_frame_parse(const char *input, struct BhFrame **out);

/**
 * Adds the triple `(x, y, z)`.
 *
 * # Safety
 * `f` is a live frame handle not used concurrently.
 */
enum BhStatus bh_frame_insert(struct BhFrame *f, uintptr_t x, uintptr_t y, uintptr_t z);

/**
 * # Safety
 * `f` is a live frame handle; `out` is valid for a write.
 */
enum BhStatus bh_frame_worlds(const struct BhFrame *f, uintptr_t *out);

/**
 * Checks a named first-order frame condition such as `B4` or `B6six`.
 *
 * # Safety
 * `f` is a live frame handle, `axiom` a NUL-terminated string and `holds`
 * valid for a write.
 */
enum BhStatus bh_frame_check_axiom(const struct BhFrame *f, const char *axiom, bool *holds);

/**
 * Decides whether `phi` is valid on the frame; a `budget` of zero uses the
 * default bound on valuations.
 *
 * # Safety
 * `f` and `phi` are live handles; `holds` is valid for a write.
 */
enum BhStatus bh_frame_valid(const struct BhFrame *f,
                             const struct BhFormula *phi,
                             uint64_t budget,
                             bool *holds);

/**
 * # Safety
 * `f` is null or a frame handle not yet freed.
 */
void bh_frame_free(struct BhFrame *f);

/**
 * Reads a dense model file (`carrier ...` and `V name: ...` lines).
 *
 * # Safety
 * `input` is a NUL-terminated string; `out` is valid for a write.
 */
enum BhStatus bh_dense_model_parse(const char *input, struct BhDenseModel **out);

/**
 * Sets one symbol, e.g. `p=(0,1) {2}` or `i=1/2`.
 *
 * # Safety
 * `m` is a live model handle not used concurrently; `assignment` is a
 * NUL-terminated string.
 */
enum BhStatus bh_dense_model_assign(struct BhDenseModel *m, const char *assignment);

/**
 * The extension of `phi` in set syntax, released with [`bh_string_free`].
 *
 * # Safety
 * `m` and `phi` are live handles; `out` is valid for a write.
 */
enum BhStatus bh_dense_extension(const struct BhDenseModel *m,
                                 const struct BhFormula *phi,
                                 char **out);

/**
 * Whether `phi` is true at every point of the carrier.
 *
 * # Safety
 * `m` and `phi` are live handles; `holds` is valid for a write.
 */
enum BhStatus bh_dense_holds(const struct BhDenseModel *m,
                             const struct BhFormula *phi,
                             bool *holds);

/**
 * # Safety
 * `m` is null or a model handle not yet freed.
 */
void bh_dense_model_free(struct BhDenseModel *m);

/**
 * Checks a derivation file. A well-formed but incorrect derivation returns
 * `Ok` with `valid` false and the diagnostic in [`bh_last_error`].
 *
 * # Safety
 * `input` is a NUL-terminated string; `valid` is valid for a write.
 */
enum BhStatus bh_derivation_check(const char *input, bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BHLOGIC_H */
