#ifndef SPANTAG_H
#define SPANTAG_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SPANTAG_SCHEME_IOB 0

#define SPANTAG_SCHEME_BIO 1

#define SPANTAG_SCHEME_IOBES 2

#define SPANTAG_SCHEME_BILOU 3

#define SPANTAG_SCHEME_BMEWO 4

#define SPANTAG_POLICY_CONLLEVAL 0

#define SPANTAG_POLICY_BEGIN_END 1

typedef enum SpantagErrorKind {
  SPANTAG_ERROR_KIND_INVALID_LABEL_FORMAT = 0,
  SPANTAG_ERROR_KIND_ILLEGAL_START = 1,
  SPANTAG_ERROR_KIND_TYPE_SWITCH_INSIDE_SPAN = 2,
  SPANTAG_ERROR_KIND_MISSING_END = 3,
  SPANTAG_ERROR_KIND_DANGLING_END = 4,
  SPANTAG_ERROR_KIND_ILLEGAL_FOLLOW = 5,
} SpantagErrorKind;

typedef enum SpantagStatus {
  SPANTAG_STATUS_OK = 0,
  SPANTAG_STATUS_NULL_POINTER = 1,
  SPANTAG_STATUS_INVALID_UTF8 = 2,
  SPANTAG_STATUS_INVALID_ARGUMENT = 3,
  SPANTAG_STATUS_INVALID_LABEL = 4,
  /**
   * The label sequence violates the scheme; see the error handle.
   */
  SPANTAG_STATUS_MALFORMED_SEQUENCE = 5,
  SPANTAG_STATUS_OUT_OF_RANGE = 6,
  SPANTAG_STATUS_PANIC = 7,
} SpantagStatus;

/**
 * Opaque: an owned list of label strings.
 */
typedef struct SpantagLabels SpantagLabels;

/**
 * Opaque: spans and errors from one parse.
 */
typedef struct SpantagParseResult SpantagParseResult;

/**
 * Opaque: an accumulating span scorer.
 */
typedef struct SpantagScorer SpantagScorer;

/**
 * Opaque: a transition table with its vocabulary.
 */
typedef struct SpantagTransitionTable SpantagTransitionTable;

/**
 * A span borrowed from a parse result. `end` is exclusive.
 */
typedef struct SpantagSpan {
  const char *entity_type;
  size_t start;
  size_t end;
} SpantagSpan;

/**
 * A diagnostic borrowed from a parse result.
 */
typedef struct SpantagSpanError {
  enum SpantagErrorKind kind;
  size_t token_index;
  const char *label;
  const char *message;
} SpantagSpanError;

typedef struct SpantagCounts {
  size_t gold;
  size_t predicted;
  size_t correct;
  double precision;
  double recall;
  double f1;
} SpantagCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next `spantag_*` call on the same thread.
 */
const char *spantag_last_error(void);

/**
 * Parses `len` labels under `scheme_code` with `policy_code`. Never reports
 * a malformed sequence as a failure: problems are listed in the result.
 *
 * # Safety
 * `labels` must point to `len` NUL-terminated strings (it may be NULL when
 * `len` is 0). `out` must be a valid pointer to write the handle to.
 */
enum SpantagStatus spantag_parse(const char *const *labels,
                                 size_t len,
                                 uint32_t scheme_code,
                                 uint32_t policy_code,
                                 struct SpantagParseResult **out);

size_t spantag_parse_result_span_count(const struct SpantagParseResult *result);

size_t spantag_parse_result_error_count(const struct SpantagParseResult *result);

/**
 * # Safety
 * `result` must be a live handle and `out` a valid pointer.
 */
enum SpantagStatus spantag_parse_result_span(const struct SpantagParseResult *result,
                                             size_t index,
                                             struct SpantagSpan *out);

/**
 * # Safety
 * `result` must be a live handle and `out` a valid pointer.
 */
enum SpantagStatus spantag_parse_result_error(const struct SpantagParseResult *result,
                                              size_t index,
                                              struct SpantagSpanError *out);

/**
 * # Safety
 * `result` must be NULL or a handle from this library not yet freed.
 */
void spantag_parse_result_free(struct SpantagParseResult *result);

/**
 * Converts labels between schemes. On a malformed sequence returns
 * `SPANTAG_STATUS_MALFORMED_SEQUENCE` and, if `errors_out` is non-NULL,
 * stores a parse result carrying every error there.
 *
 * # Safety
 * `labels` must point to `len` NUL-terminated strings. `out` must be valid;
 * `errors_out` may be NULL.
 */
enum SpantagStatus spantag_convert(const char *const *labels,
                                   size_t len,
                                   uint32_t from_scheme,
                                   uint32_t to_scheme,
                                   struct SpantagLabels **out,
                                   struct SpantagParseResult **errors_out);

size_t spantag_labels_count(const struct SpantagLabels *labels);

/**
 * The label at `index`, or NULL when out of range.
 */
const char *spantag_labels_get(const struct SpantagLabels *labels, size_t index);

/**
 * # Safety
 * `labels` must be NULL or a handle from this library not yet freed.
 */
void spantag_labels_free(struct SpantagLabels *labels);

/**
 * # Safety
 * `from` and `to` must be NUL-terminated strings; `out` a valid pointer.
 */
enum SpantagStatus spantag_is_legal_transition(const char *from,
                                               const char *to,
                                               uint32_t scheme_code,
                                               bool *out);

/**
 * Builds the transition table for `types` (in order) under a scheme.
 *
 * # Safety
 * `types` must point to `len` NUL-terminated strings; `out` a valid pointer.
 */
enum SpantagStatus spantag_transition_table_new(const char *const *types,
                                                size_t len,
                                                uint32_t scheme_code,
                                                struct SpantagTransitionTable **out);

/**
 * Vocabulary size (matrix dimension).
 */
size_t spantag_transition_table_size(const struct SpantagTransitionTable *table);

const char *spantag_transition_table_label(const struct SpantagTransitionTable *table,
                                           size_t index);

/**
 * Copies the mask row-major (`mask[from * size + to]`, 1 = legal).
 * `capacity` must be at least `size * size`.
 *
 * # Safety
 * `mask` must point to `capacity` writable bytes.
 */
enum SpantagStatus spantag_transition_table_copy_mask(const struct SpantagTransitionTable *table,
                                                      uint8_t *mask,
                                                      size_t capacity);

/**
 * Copies the sequence-start (`which` = 0) or sequence-end (`which` = 1)
 * vector into `out`, which must hold `size` bytes.
 *
 * # Safety
 * `out` must point to `capacity` writable bytes.
 */
enum SpantagStatus spantag_transition_table_copy_boundary(const struct SpantagTransitionTable *table,
                                                          uint32_t which,
                                                          uint8_t *out,
                                                          size_t capacity);

/**
 * # Safety
 * `table` must be NULL or a handle from this library not yet freed.
 */
void spantag_transition_table_free(struct SpantagTransitionTable *table);

struct SpantagScorer *spantag_scorer_new(void);

/**
 * Parses one gold/predicted label pair robustly and adds its spans.
 *
 * # Safety
 * `gold` and `predicted` must each point to `len` NUL-terminated strings.
 */
enum SpantagStatus spantag_scorer_add_labels(struct SpantagScorer *scorer,
                                             const char *const *gold,
                                             const char *const *predicted,
                                             size_t len,
                                             uint32_t scheme_code,
                                             uint32_t policy_code);

/**
 * Micro-averaged counts and rates so far.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SpantagStatus spantag_scorer_micro(const struct SpantagScorer *scorer,
                                        struct SpantagCounts *out);

/**
 * Counts for one entity type; all zeros if the type was never seen.
 *
 * # Safety
 * `entity_type` must be a NUL-terminated string; `out` a valid pointer.
 */
enum SpantagStatus spantag_scorer_type(const struct SpantagScorer *scorer,
                                       const char *entity_type,
                                       struct SpantagCounts *out);

/**
 * # Safety
 * `scorer` must be NULL or a handle from this library not yet freed.
 */
void spantag_scorer_free(struct SpantagScorer *scorer);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPANTAG_H */
