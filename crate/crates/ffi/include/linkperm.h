#ifndef LINKPERM_H
#define LINKPERM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_POINTER = 1,
  LP_STATUS_OUT_OF_RANGE = 2,
  LP_STATUS_INVALID_PERMUTATION = 3,
  LP_STATUS_BUFFER_TOO_SMALL = 4,
  LP_STATUS_PARSE_ERROR = 5,
  LP_STATUS_CALLBACK_ABORT = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

typedef enum LpSide {
  LP_SIDE_NO_OP = 0,
  LP_SIDE_LEFT = 1,
  LP_SIDE_RIGHT = 2,
} LpSide;

/**
 * Iterator over the permutations of a list it owns.
 */
typedef struct LpIter LpIter;

/**
 * Iterator over the move schedule for a list length.
 */
typedef struct LpMoves LpMoves;

/**
 * Mutable linked list of `uint32_t`.
 */
typedef struct LpSeq LpSeq;

/**
 * Visitor callback. Return 0 to continue, anything else to stop.
 */
typedef int (*LpVisitFn)(const uint32_t *perm, size_t len, void *user);

/**
 * One transition: the sublist starting at `index` (length `sublist_len`)
 * gets a new head taken from the given side.
 */
typedef struct LpMove {
  size_t index;
  enum LpSide side;
  size_t sublist_len;
} LpMove;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *lp_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lp_string_free(char *s);

/**
 * Builds a list from `len` values.
 *
 * # Safety
 * `items` must point to `len` readable values; `out` must be writable.
 */
enum LpStatus lp_seq_new(const uint32_t *items, size_t len, struct LpSeq **out);

/**
 * Builds the list `0, 1, ..., k-1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LpStatus lp_seq_identity(size_t k, struct LpSeq **out);

/**
 * # Safety
 * `seq` must come from `lp_seq_new` or `lp_seq_identity`, or be null.
 */
void lp_seq_free(struct LpSeq *seq);

/**
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_seq_len(const struct LpSeq *seq, size_t *out);

/**
 * Number of nodes ever allocated by the list, sentinel included.
 *
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_seq_allocation_count(const struct LpSeq *seq, size_t *out);

/**
 * Copies the current order into `buf`, which must hold at least
 * `lp_seq_len` values.
 *
 * # Safety
 * `seq` must be a live handle; `buf` must have room for `cap` values.
 */
enum LpStatus lp_seq_copy(const struct LpSeq *seq, uint32_t *buf, size_t cap);

/**
 * Visits every permutation of `seq` in generation order, starting with its
 * current order. A nonzero return from `visit` stops the traversal and
 * yields `LP_STATUS_CALLBACK_ABORT`. The `perm` pointer is only valid during
 * the callback.
 *
 * # Safety
 * `seq` must be a live handle and `visit` a valid function.
 */
enum LpStatus lp_visit(struct LpSeq *seq, LpVisitFn visit, void *user);

/**
 * Starts an iterator over the permutations of `len` values.
 *
 * # Safety
 * `items` must point to `len` readable values; `out` must be writable.
 */
enum LpStatus lp_iter_new(const uint32_t *items, size_t len, struct LpIter **out);

/**
 * Writes the next permutation to `buf` and sets `*produced` to 1, or sets
 * it to 0 once the traversal is finished.
 *
 * # Safety
 * `it` must be a live handle; `buf` must have room for `cap` values.
 */
enum LpStatus lp_iter_next(struct LpIter *it, uint32_t *buf, size_t cap, int *produced);

/**
 * # Safety
 * `it` must come from `lp_iter_new`, or be null.
 */
void lp_iter_free(struct LpIter *it);

/**
 * Starts the move schedule for a list of length `k` (`k! - 1` moves).
 *
 * # Safety
 * `out` must be writable.
 */
enum LpStatus lp_moves_new(size_t k, struct LpMoves **out);

/**
 * Writes the next move and sets `*produced` to 1, or sets it to 0 at the end.
 *
 * # Safety
 * `moves` must be a live handle; `out` and `produced` must be writable.
 */
enum LpStatus lp_moves_next(struct LpMoves *moves, struct LpMove *out, int *produced);

/**
 * # Safety
 * `moves` must come from `lp_moves_new`, or be null.
 */
void lp_moves_free(struct LpMoves *moves);

/**
 * Applies one move to `seq` by position.
 *
 * # Safety
 * `seq` must be a live handle.
 */
enum LpStatus lp_apply_move(struct LpSeq *seq, struct LpMove m);

/**
 * Rearranges the suffix starting at position `i` into the order a full
 * traversal of that suffix would end on.
 *
 * # Safety
 * `seq` must be a live handle.
 */
enum LpStatus lp_last_perm(struct LpSeq *seq, size_t i);

/**
 * Rearranges `seq` into the permutation with index `n` in generation order.
 *
 * # Safety
 * `seq` must be a live handle.
 */
enum LpStatus lp_unrank_u64(struct LpSeq *seq, uint64_t n);

/**
 * Like `lp_unrank_u64` with the index given as a decimal string.
 *
 * # Safety
 * `seq` must be a live handle; `n` a nul-terminated string.
 */
enum LpStatus lp_unrank_dec(struct LpSeq *seq, const char *n);

/**
 * Index of a permutation of `0..len` in generation order. Fails with
 * `LP_STATUS_OUT_OF_RANGE` if the index does not fit in 64 bits.
 *
 * # Safety
 * `perm` must point to `len` readable values; `out` must be writable.
 */
enum LpStatus lp_rank_u64(const size_t *perm, size_t len, uint64_t *out);

/**
 * Like `lp_rank_u64`, returning a decimal string to release with
 * `lp_string_free`.
 *
 * # Safety
 * `perm` must point to `len` readable values; `out` must be writable.
 */
enum LpStatus lp_rank_dec(const size_t *perm, size_t len, char **out);

/**
 * Kendall tau distance between two orderings of the same `len` values.
 *
 * # Safety
 * `a` and `b` must point to `len` readable values; `out` must be writable.
 */
enum LpStatus lp_kendall_tau(const uint32_t *a, const uint32_t *b, size_t len, uint64_t *out);

/**
 * Cumulative transition distance of a full traversal of `k` elements, as a
 * decimal string to release with `lp_string_free`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LpStatus lp_recurrence_distance_dec(size_t k, char **out);

/**
 * Limit of the average transition distance as the list grows.
 */
double lp_average_distance_limit(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKPERM_H */
