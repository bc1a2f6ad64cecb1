#ifndef RECOP_H
#define RECOP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum RecopStatus {
  RECOP_STATUS_OK = 0,
  RECOP_STATUS_NULL_POINTER = 1,
  RECOP_STATUS_INVALID_UTF8 = 2,
  RECOP_STATUS_PARSE = 3,
  RECOP_STATUS_JACOBI = 4,
  RECOP_STATUS_DEGENERATE_FORM = 5,
  RECOP_STATUS_PRECONDITION = 6,
  RECOP_STATUS_CONSISTENCY = 7,
  RECOP_STATUS_UNKNOWN_EXAMPLE = 8,
  RECOP_STATUS_NO_METRIC = 9,
  RECOP_STATUS_NUMERIC = 10,
  RECOP_STATUS_PANIC = 11,
  RECOP_STATUS_OTHER = 12,
} RecopStatus;

/**
 * Classification of a pair of forms.
 */
typedef struct RecopPair RecopPair;

/**
 * Classification of a triple of forms, from a document or the catalog.
 */
typedef struct RecopTriple RecopTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *recop_last_error(void);

/**
 * Classifies a `pair` document given as JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RecopStatus recop_classify_pair(const char *json, struct RecopPair **out);

/**
 * Tag of the pair; owned by the handle.
 *
 * # Safety
 * `pair` must be a live handle or NULL.
 */
const char *recop_pair_tag(const struct RecopPair *pair);

/**
 * 1 when every required check passed, 0 otherwise or for NULL.
 *
 * # Safety
 * `pair` must be a live handle or NULL.
 */
int recop_pair_passed(const struct RecopPair *pair);

/**
 * JSON report; free with `recop_string_free`.
 *
 * # Safety
 * `pair` must be a live handle or NULL.
 */
char *recop_pair_report(const struct RecopPair *pair);

/**
 * # Safety
 * `pair` must come from `recop_classify_pair` and not be freed twice.
 */
void recop_pair_free(struct RecopPair *pair);

/**
 * Classifies a `triple` document given as JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RecopStatus recop_classify_triple(const char *json, struct RecopTriple **out);

/**
 * Looks up and verifies a catalog example such as `dotti-fino-8` or
 * `product(dotti-fino-8,neg(flat-hk-4))`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RecopStatus recop_verify_example(const char *name, struct RecopTriple **out);

/**
 * Tag of the triple; owned by the handle.
 *
 * # Safety
 * `triple` must be a live handle or NULL.
 */
const char *recop_triple_tag(const struct RecopTriple *triple);

/**
 * Writes the 1-based input index held by each canonical slot.
 *
 * # Safety
 * `triple` must be a live handle and `out` point to three `size_t`.
 */
enum RecopStatus recop_triple_permutation(const struct RecopTriple *triple, size_t *out);

/**
 * Positive and negative index of the induced metric. `NoMetric` for tags
 * without one.
 *
 * # Safety
 * `triple` must be a live handle; `positive` and `negative` valid pointers.
 */
enum RecopStatus recop_triple_signature(const struct RecopTriple *triple,
                                        size_t *positive,
                                        size_t *negative);

/**
 * 1 when every required check passed, 0 otherwise or for NULL.
 *
 * # Safety
 * `triple` must be a live handle or NULL.
 */
int recop_triple_passed(const struct RecopTriple *triple);

/**
 * JSON report; free with `recop_string_free`.
 *
 * # Safety
 * `triple` must be a live handle or NULL.
 */
char *recop_triple_report(const struct RecopTriple *triple);

/**
 * # Safety
 * `triple` must come from this library and not be freed twice.
 */
void recop_triple_free(struct RecopTriple *triple);

/**
 * Runs a command-line invocation (without the program name) and returns
 * its JSON report and exit code. The status only reflects argument
 * marshalling; command failures are in the report.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; outputs must be valid.
 */
enum RecopStatus recop_run(const char *const *argv, size_t argc, char **report, int *exit_code);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void recop_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECOP_H */
