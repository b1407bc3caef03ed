#ifndef ALLAGMATIC_H
#define ALLAGMATIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum AllagStatus {
  ALLAG_STATUS_OK = 0,
  ALLAG_STATUS_NULL_POINTER = 1,
  ALLAG_STATUS_INVALID_ARGUMENT = 2,
  ALLAG_STATUS_LENGTH_MISMATCH = 3,
  ALLAG_STATUS_OUT_OF_RANGE = 4,
  ALLAG_STATUS_INVALID_STATE = 5,
  ALLAG_STATUS_BUFFER_TOO_SMALL = 6,
  /*
   The search ran out of budget; the result struct is still filled.
   */
  ALLAG_STATUS_BUDGET_EXHAUSTED = 7,
  ALLAG_STATUS_PANIC = 99,
} AllagStatus;

/*
 Layered network handle.
 */
typedef struct AllagAnn AllagAnn;

/*
 Cellular automaton handle.
 */
typedef struct AllagCa AllagCa;

/*
 Summary of a search. `rule` and `network_iteration` describe the
 accepted candidate, or the last one tried when the budget ran out; each
 is -1 when it does not apply. `matches` is 0 when no iteration ran.
 */
typedef struct AllagSearchResult {
  uint64_t iterations;
  bool terminated;
  int32_t rule;
  int64_t network_iteration;
  uint32_t matches;
  uint32_t width;
} AllagSearchResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *allag_version(void);

/*
 Copies the calling thread's last error message into `buf` (truncated
 and NUL-terminated). Returns the full message length plus one, or 0 if
 there is no message.

 # Safety
 `buf` must be null or point to `len` writable bytes.
 */
size_t allag_last_error_message(char *buf, size_t len);

/*
 Creates a periodic CA of `width` cells running Wolfram rule `rule`.
 A null `initial` places one live cell at `width / 2`.

 # Safety
 `initial` must be null or a NUL-terminated string; `out` must be valid.
 */
enum AllagStatus allag_ca_new(size_t width,
                              uint32_t rule,
                              const char *initial,
                              struct AllagCa **out);

/*
 # Safety
 `ca` must be null or a handle from [`allag_ca_new`] not yet freed.
 */
void allag_ca_free(struct AllagCa *ca);

/*
 Advances the automaton by `steps` synchronous updates.

 # Safety
 `ca` must be a live handle.
 */
enum AllagStatus allag_ca_step(struct AllagCa *ca, uint64_t steps);

/*
 # Safety
 `ca` must be a live handle and `out_time` valid.
 */
enum AllagStatus allag_ca_time(const struct AllagCa *ca, uint64_t *out_time);

/*
 Writes the current cells as a state string; `len` must be at least
 width + 1.

 # Safety
 `ca` must be a live handle and `buf` point to `len` writable bytes.
 */
enum AllagStatus allag_ca_state(const struct AllagCa *ca, char *buf, size_t len);

/*
 Scores all 256 rules: `out_matches[r]` receives the number of positions
 where rule `r`, run `steps` times from `initial`, agrees with `target`.

 # Safety
 `initial` and `target` must be NUL-terminated strings; `out_matches`
 must hold `len >= 256` values.
 */
enum AllagStatus allag_rule_census(const char *initial,
                                   const char *target,
                                   uint64_t steps,
                                   uint32_t *out_matches,
                                   size_t len);

/*
 Fraction of positions at which two equal-length state strings agree.

 # Safety
 `a` and `b` must be NUL-terminated strings; `out` must be valid.
 */
enum AllagStatus allag_match_fraction(const char *a, const char *b, double *out);

/*
 Random rule search. Null `initial`/`target` select the single-cell start
 and the rule-110 configuration after `steps` steps.

 # Safety
 String arguments must be null or NUL-terminated; `out` must be valid.
 */
enum AllagStatus allag_ca_rule_search(const char *initial,
                                      const char *target,
                                      double threshold,
                                      uint64_t steps,
                                      uint64_t budget,
                                      uint64_t seed,
                                      uint32_t workers,
                                      struct AllagSearchResult *out);

/*
 Creates a network with `layers` computed layers of `width` neurons and
 weights drawn from stream 0 of `seed`.

 # Safety
 `out` must be valid.
 */
enum AllagStatus allag_ann_new(size_t width, size_t layers, uint64_t seed, struct AllagAnn **out);

/*
 # Safety
 `ann` must be null or a handle from [`allag_ann_new`] not yet freed.
 */
void allag_ann_free(struct AllagAnn *ann);

/*
 Runs a forward pass and writes the output layer as a state string.

 # Safety
 `ann` must be a live handle, `input` NUL-terminated, `buf` `len` bytes.
 */
enum AllagStatus allag_ann_forward(struct AllagAnn *ann, const char *input, char *buf, size_t len);

/*
 Perceptron training of the output-layer weights.

 # Safety
 `ann` must be a live handle; `input` and `target` NUL-terminated.
 */
enum AllagStatus allag_ann_train(struct AllagAnn *ann,
                                 const char *input,
                                 const char *target,
                                 double rate,
                                 uint32_t epochs);

/*
 # Safety
 `ann` must be a live handle and `out` valid.
 */
enum AllagStatus allag_ann_weight_count(const struct AllagAnn *ann, size_t *out);

/*
 Copies all weights in edge order (depth, column, ascending source
 column) into `out`, which must hold `len >= weight count` values.

 # Safety
 `ann` must be a live handle and `out` point to `len` writable doubles.
 */
enum AllagStatus allag_ann_weights(const struct AllagAnn *ann, double *out, size_t len);

/*
 Random-restart network search with perceptron training of each
 candidate's output layer. Null strings select the standard start and
 the rule-110 target.

 # Safety
 String arguments must be null or NUL-terminated; `out` must be valid.
 */
enum AllagStatus allag_ann_search(const char *initial,
                                  const char *target,
                                  double threshold,
                                  uint64_t layers,
                                  double rate,
                                  uint32_t epochs,
                                  uint64_t budget,
                                  uint64_t seed,
                                  uint32_t workers,
                                  struct AllagSearchResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALLAGMATIC_H */
