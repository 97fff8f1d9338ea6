#ifndef GIC_H
#define GIC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every call.
 */
typedef enum GicStatus {
  GIC_STATUS_OK = 0,
  GIC_STATUS_NULL_POINTER = 1,
  GIC_STATUS_INVALID_UTF8 = 2,
  GIC_STATUS_PARSE_ERROR = 3,
  GIC_STATUS_DATUM_INVALID = 4,
  GIC_STATUS_ALGORITHM_BROKEN = 5,
  GIC_STATUS_TOO_LARGE = 6,
  GIC_STATUS_OUT_OF_RANGE = 7,
  GIC_STATUS_INTERNAL = 8,
} GicStatus;

/*
 A loaded datum.
 */
typedef struct GicDatum GicDatum;

/*
 A finished run.
 */
typedef struct GicRun GicRun;

/*
 `sign`: 0 for `v^tau`, 1 for `(-v)^tau`. `flag_order`: 0 ascending,
 1 descending.
 */
typedef struct GicConventions {
  int32_t sign;
  int32_t flag_order;
} GicConventions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Default conventions.
 */
struct GicConventions gic_conventions_default(void);

/*
 Builds a type-A datum from a spec such as `glq:0,0,1;n=1`.

 # Safety
 `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GicStatus gic_datum_from_gl(const char *spec,
                                 struct GicConventions conv,
                                 struct GicDatum **out);

/*
 Loads a datum table from JSON text.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GicStatus gic_datum_from_json(const char *json,
                                   struct GicConventions conv,
                                   struct GicDatum **out);

/*
 Number of basis elements.

 # Safety
 `datum` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_datum_dim(const struct GicDatum *datum, uintptr_t *out);

/*
 # Safety
 `datum` must come from this library or be null; it is invalid afterwards.
 */
void gic_datum_free(struct GicDatum *datum);

/*
 Runs the engine on `datum`.

 # Safety
 `datum` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_run(const struct GicDatum *datum, struct GicRun **out);

/*
 # Safety
 `run` must come from this library or be null; it is invalid afterwards.
 */
void gic_run_free(struct GicRun *run);

/*
 The run as JSON; `all_degrees != 0` ignores `n`.

 # Safety
 `run` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_run_to_json(const struct GicRun *run,
                               int64_t n,
                               int32_t all_degrees,
                               char **out);

/*
 The f-, e- and weight-dimension matrices as CSV.

 # Safety
 `run` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_run_to_csv(const struct GicRun *run, int64_t n, int32_t all_degrees, char **out);

/*
 Number of simple objects in degree `n`.

 # Safety
 `run` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_run_size(const struct GicRun *run, int64_t n, uintptr_t *out);

/*
 Label of object `i` in degree `n`.

 # Safety
 `run` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_run_label(const struct GicRun *run, int64_t n, uintptr_t i, char **out);

/*
 Entry `(i, j)` of the multiplicity matrix in degree `n`, as text.

 # Safety
 `run` must come from this library and `out` be a valid pointer.
 */
enum GicStatus gic_run_f_entry(const struct GicRun *run,
                               int64_t n,
                               uintptr_t i,
                               uintptr_t j,
                               char **out);

/*
 # Safety
 `s` must come from this library or be null; it is invalid afterwards.
 */
void gic_string_free(char *s);

/*
 Message of the last failed call on this thread, or an empty string. The
 pointer stays valid until the next call on the same thread.
 */
const char *gic_last_error_message(void);

/*
 Library version, a static string.
 */
const char *gic_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GIC_H */
