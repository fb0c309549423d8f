#ifndef MOORE_LEARN_H
#define MOORE_LEARN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MlStatus {
  ML_STATUS_OK = 0,
  ML_STATUS_NULL_POINTER = 1,
  ML_STATUS_INVALID_UTF8 = 2,
  ML_STATUS_INVALID_ARGUMENT = 3,
  ML_STATUS_PARSE = 4,
  ML_STATUS_INCONSISTENT = 5,
  ML_STATUS_INCOMPLETE = 6,
  ML_STATUS_ALPHABET_MISMATCH = 7,
  ML_STATUS_GENERATION_FAILURE = 8,
  ML_STATUS_EMPTY_TEST_SET = 9,
  ML_STATUS_TIMEOUT = 10,
  ML_STATUS_OTHER = 11,
  ML_STATUS_PANIC = 12,
} MlStatus;

typedef enum MlAlgorithm {
  ML_ALGORITHM_PTAP = 0,
  ML_ALGORITHM_PRPNI = 1,
  ML_ALGORITHM_MOORE_MI = 2,
} MlAlgorithm;

typedef enum MlPolicy {
  ML_POLICY_STRONG = 0,
  ML_POLICY_MEDIUM = 1,
  ML_POLICY_WEAK = 2,
} MlPolicy;

/**
 * Opaque learned or generated machine.
 */
typedef struct MlMachine MlMachine;

/**
 * Opaque set of input-output traces.
 */
typedef struct MlTraceSet MlTraceSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next `ml_*` call on the same thread.
 */
const char *ml_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ml_string_free(char *s);

/**
 * Parses traces in the line format or JSON.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum MlStatus ml_traceset_parse(const char *source, struct MlTraceSet **out);

/**
 * # Safety
 * `ts` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_traceset_len(const struct MlTraceSet *ts, size_t *out);

/**
 * Writes the traces in the line format.
 *
 * # Safety
 * `ts` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_traceset_to_text(const struct MlTraceSet *ts, char **out);

/**
 * # Safety
 * `ts` must be null or a live handle; it is invalid afterwards.
 */
void ml_traceset_free(struct MlTraceSet *ts);

/**
 * Learns a machine. `timeout_s <= 0` means no time limit.
 *
 * # Safety
 * `ts` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_learn(const struct MlTraceSet *ts,
                       enum MlAlgorithm algorithm,
                       double timeout_s,
                       struct MlMachine **out);

/**
 * Random minimal complete machine, deterministic in `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum MlStatus ml_generate(uint64_t seed,
                          size_t states,
                          size_t inputs,
                          size_t outputs,
                          struct MlMachine **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_characteristic_sample(const struct MlMachine *m, struct MlTraceSet **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum MlStatus ml_machine_from_json(const char *json, struct MlMachine **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_machine_to_json(const struct MlMachine *m, char **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_machine_to_dot(const struct MlMachine *m, char **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum MlStatus ml_machine_num_states(const struct MlMachine *m, size_t *out);

/**
 * Runs the machine on space-separated input symbols and returns the
 * space-separated output symbols, initial output first.
 *
 * # Safety
 * `m` must be a live handle, `input` a NUL-terminated string and `out`
 * writable.
 */
enum MlStatus ml_machine_run(const struct MlMachine *m, const char *input, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum MlStatus ml_machine_equivalent(const struct MlMachine *a,
                                    const struct MlMachine *b,
                                    bool *out);

/**
 * Mean score of `m` over `test`, in `[0, 1]`.
 *
 * # Safety
 * `m` and `test` must be live handles; `out` must be writable.
 */
enum MlStatus ml_accuracy(const struct MlMachine *m,
                          const struct MlTraceSet *test,
                          enum MlPolicy policy,
                          double *out);

/**
 * # Safety
 * `m` must be null or a live handle; it is invalid afterwards.
 */
void ml_machine_free(struct MlMachine *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOORE_LEARN_H */
