#ifndef REGFLOW_H
#define REGFLOW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RegflowMode {
  REGFLOW_MODE_KERNEL = 0,
  REGFLOW_MODE_ROWSPACE = 1,
} RegflowMode;

typedef enum RegflowOracle {
  REGFLOW_ORACLE_GENERIC = 0,
  REGFLOW_ORACLE_GRAPHIC = 1,
  REGFLOW_ORACLE_COGRAPHIC = 2,
} RegflowOracle;

/**
 * Result of every fallible call.
 */
typedef enum RegflowStatus {
  REGFLOW_STATUS_OK = 0,
  REGFLOW_STATUS_NULL_ARGUMENT = 1,
  REGFLOW_STATUS_INVALID_UTF8 = 2,
  REGFLOW_STATUS_PARSE = 3,
  REGFLOW_STATUS_INVALID_INPUT = 4,
  REGFLOW_STATUS_ORACLE_MISMATCH = 5,
  REGFLOW_STATUS_INVARIANT = 6,
  REGFLOW_STATUS_INDEX_OUT_OF_RANGE = 7,
  REGFLOW_STATUS_PANIC = 8,
} RegflowStatus;

/**
 * A parsed instance, optionally with its digraph.
 */
typedef struct RegflowInstance RegflowInstance;

/**
 * The outcome of a solve.
 */
typedef struct RegflowSolution RegflowSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance in the line-oriented instance format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum RegflowStatus regflow_instance_parse(const char *text, struct RegflowInstance **out);

/**
 * Parses a DIMACS max-flow digraph and builds its flow or coflow space.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum RegflowStatus regflow_instance_parse_dimacs(const char *text,
                                                 enum RegflowMode mode,
                                                 struct RegflowInstance **out);

/**
 * Parses either format, detected from the first meaningful line. `mode`
 * applies to DIMACS input only.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum RegflowStatus regflow_instance_load(const char *text,
                                         enum RegflowMode mode,
                                         struct RegflowInstance **out);

/**
 * # Safety
 * `instance` must be null or a handle from this library, not yet freed.
 */
void regflow_instance_free(struct RegflowInstance *instance);

/**
 * Size of the ground set, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t regflow_instance_ground_size(const struct RegflowInstance *instance);

/**
 * 1-based index of the return element, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t regflow_instance_return_element(const struct RegflowInstance *instance);

/**
 * Runs the shortest augmenting path solver.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be writable.
 */
enum RegflowStatus regflow_solve(const struct RegflowInstance *instance,
                                 enum RegflowOracle oracle,
                                 struct RegflowSolution **out);

/**
 * Optimum from the exact LP reference solver, as a decimal rational
 * string or `"unbounded"`.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be writable.
 */
enum RegflowStatus regflow_reference_objective(const struct RegflowInstance *instance, char **out);

/**
 * # Safety
 * `solution` must be null or a handle from this library, not yet freed.
 */
void regflow_solution_free(struct RegflowSolution *solution);

/**
 * True when the objective is unbounded.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
bool regflow_solution_is_unbounded(const struct RegflowSolution *solution);

/**
 * Number of augmentations performed.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t regflow_solution_augmentations(const struct RegflowSolution *solution);

/**
 * The objective as `"p/q"`, an integer, or `"unbounded"`.
 *
 * # Safety
 * `solution` must be a live handle; `out` must be writable.
 */
enum RegflowStatus regflow_solution_objective(const struct RegflowSolution *solution, char **out);

/**
 * Flow value on the 1-based ground element `index`. For unbounded
 * outcomes this is the last flow before the unbounded path was found.
 *
 * # Safety
 * `solution` must be a live handle; `out` must be writable.
 */
enum RegflowStatus regflow_solution_flow_value(const struct RegflowSolution *solution,
                                               size_t index,
                                               char **out);

/**
 * The augmentation trace in the text trace format.
 *
 * # Safety
 * `solution` must be a live handle; `out` must be writable.
 */
enum RegflowStatus regflow_solution_trace(const struct RegflowSolution *solution, char **out);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *regflow_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library, not yet freed.
 */
void regflow_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGFLOW_H */
