#ifndef LEGSURG_H
#define LEGSURG_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum LsgStatus {
  LSG_STATUS_OK = 0,
  LSG_STATUS_NULL_POINTER = 1,
  LSG_STATUS_INVALID_UTF8 = 2,
  LSG_STATUS_PARSE_ERROR = 3,
  LSG_STATUS_INVALID_INPUT = 4,
  LSG_STATUS_OVERFLOW = 5,
  LSG_STATUS_BUFFER_TOO_SMALL = 6,
  LSG_STATUS_INDEX_OUT_OF_RANGE = 7,
  LSG_STATUS_PANIC = 8,
} LsgStatus;

/**
 * A contact (±1)-surgery presentation with its certificates.
 */
typedef struct LsgConversion LsgConversion;

/**
 * A validated contact surgery diagram.
 */
typedef struct LsgDiagram LsgDiagram;

/**
 * One (±1)-surgery instruction. `parent` indexes the converted components.
 */
typedef struct LsgInstruction {
  size_t parent;
  /**
   * +1 or -1.
   */
  int32_t coefficient;
  size_t level;
  int64_t tb_local;
  int64_t rot_choice;
  /**
   * 1 for instructions of a (-1)-chain, 0 otherwise.
   */
  int32_t chain;
} LsgInstruction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *lsg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *lsg_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lsg_string_free(char *s);

/**
 * Parses and validates a diagram file held in memory.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LsgStatus lsg_diagram_from_json(const char *json, struct LsgDiagram **out);

/**
 * Releases a diagram. Null is ignored.
 *
 * # Safety
 * `d` must come from [`lsg_diagram_from_json`] and not have been freed.
 */
void lsg_diagram_free(struct LsgDiagram *d);

/**
 * # Safety
 * `d` and `out` must be valid pointers.
 */
enum LsgStatus lsg_diagram_component_count(const struct LsgDiagram *d, size_t *out);

/**
 * Number of distinct (±1)-presentations over all rotation choices.
 *
 * # Safety
 * `d` and `out` must be valid pointers.
 */
enum LsgStatus lsg_diagram_conversion_count(const struct LsgDiagram *d, uint64_t *out);

/**
 * First homology of the surgered manifold, e.g. `"Z/8"`.
 *
 * # Safety
 * `d` and `out` must be valid pointers.
 */
enum LsgStatus lsg_diagram_homology(const struct LsgDiagram *d, char **out);

/**
 * Converts a diagram. A null `policy` uses the policy stored in the file.
 *
 * # Safety
 * `d` and `out` must be valid pointers; `policy` is null or a
 * NUL-terminated string.
 */
enum LsgStatus lsg_convert(const struct LsgDiagram *d,
                           const char *policy,
                           struct LsgConversion **out);

/**
 * Reads a result file held in memory, e.g. for re-verification.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LsgStatus lsg_conversion_from_json(const char *json, struct LsgConversion **out);

/**
 * Releases a conversion. Null is ignored.
 *
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void lsg_conversion_free(struct LsgConversion *c);

/**
 * # Safety
 * `c` and `out` must be valid pointers.
 */
enum LsgStatus lsg_conversion_instruction_count(const struct LsgConversion *c, size_t *out);

/**
 * Instruction `index` in presentation order.
 *
 * # Safety
 * `c` and `out` must be valid pointers.
 */
enum LsgStatus lsg_conversion_instruction(const struct LsgConversion *c,
                                          size_t index,
                                          struct LsgInstruction *out);

/**
 * Serializes the conversion as a one-line result file.
 *
 * # Safety
 * `c` and `out` must be valid pointers.
 */
enum LsgStatus lsg_conversion_to_json(const struct LsgConversion *c, char **out);

/**
 * Re-derives every certificate clause. `passed` is set to 1 when all hold.
 *
 * # Safety
 * `c` and `passed` must be valid pointers.
 */
enum LsgStatus lsg_conversion_verify(const struct LsgConversion *c, int32_t *passed);

/**
 * Negative continued fraction of `p/q < 0`. Writes at most `cap` entries
 * and always sets `len`; returns [`LsgStatus::BufferTooSmall`] if
 * `cap < len`.
 *
 * # Safety
 * `buf` must hold `cap` entries (or be null with `cap == 0`); `len` must be
 * valid.
 */
enum LsgStatus lsg_neg_cf(int64_t p, int64_t q, int64_t *buf, size_t cap, size_t *len);

/**
 * Chain matrix of surgery coefficients `rs`, row-major into `out[4]`.
 *
 * # Safety
 * `rs` must hold `n` entries and `out` four.
 */
enum LsgStatus lsg_chain_matrix(const int64_t *rs, size_t n, int64_t *out);

/**
 * Boundary slope `num/den` of a chain; infinity is `1/0`.
 *
 * # Safety
 * `rs` must hold `n` entries; `num` and `den` must be valid.
 */
enum LsgStatus lsg_boundary_slope(const int64_t *rs, size_t n, int64_t *num, int64_t *den);

/**
 * `|(rn + 1) ... (r1 + 1)|`.
 *
 * # Safety
 * `rs` must hold `n` entries; `out` must be valid.
 */
enum LsgStatus lsg_tight_count(const int64_t *rs, size_t n, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEGSURG_H */
