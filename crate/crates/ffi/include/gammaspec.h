#ifndef GAMMASPEC_H
#define GAMMASPEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum GsStatus {
  GS_STATUS_OK = 0,
  // A required pointer argument was null.
  GS_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  GS_STATUS_INVALID_UTF8 = 2,
  // Bad input: unparsable ring, arguments or diagram.
  GS_STATUS_PARSE = 3,
  // Truncation or range too small for the requested computation.
  GS_STATUS_CONFIGURATION = 4,
  // The computation ran and a checked property failed.
  GS_STATUS_PROPERTY_FAILURE = 5,
  // A panic inside the engine; this is a bug.
  GS_STATUS_INTERNAL = 6,
} GsStatus;

// A finished job report together with its JSON rendering.
typedef struct GsReport GsReport;

// A parsed finite commutative ring.
typedef struct GsRing GsRing;

// Truncation parameters of a gl₁ run.
typedef struct GsConfig {
  // bound N of the injection category
  size_t bound;
  // simplicial truncation D
  size_t truncation;
  // largest n with H(n⁺) built
  size_t n_max;
  // highest homology degree checked, at most D − 2
  size_t k_max;
} GsConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Default gl₁ parameters: N = 3, D = 4, n_max = 3, k_max = 1.
struct GsConfig gs_config_default(void);

// Parses a ring such as `"Z/6"`, `"F5"` or `"F2[x]/x^2"`.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum GsStatus gs_ring_parse(const char *text, struct GsRing **out);

// Number of elements of the ring; 0 for a null handle.
//
// # Safety
// `ring` must be null or a handle from [`gs_ring_parse`].
size_t gs_ring_order(const struct GsRing *ring);

// Order of the unit group; 0 for a null handle.
//
// # Safety
// `ring` must be null or a handle from [`gs_ring_parse`].
size_t gs_ring_unit_count(const struct GsRing *ring);

// # Safety
// `ring` must be null or a handle from [`gs_ring_parse`] not yet freed.
void gs_ring_free(struct GsRing *ring);

// Runs the gl₁ pipeline on `ring`.  A report is produced whenever the
// status is `Ok`, `Configuration` (for a failing stage) or
// `PropertyFailure`; invalid parameters produce no report.
//
// # Safety
// `ring` must be a live handle, `config` null (for the defaults) or valid,
// and `out` a valid pointer.
enum GsStatus gs_gl1(const struct GsRing *ring,
                     const struct GsConfig *config,
                     struct GsReport **out);

// Runs a job given command-line style arguments without the program
// name, e.g. `{"hocolim", "--ring", "F5"}`.  `--out` is ignored: use
// [`gs_report_json`].
//
// # Safety
// `argv` must point to `argc` nul-terminated strings and `out` must be
// a valid pointer.
enum GsStatus gs_run(const char *const *argv, size_t argc, struct GsReport **out);

// Whether every check in the report passed.
//
// # Safety
// `report` must be null or a live report handle.
bool gs_report_passed(const struct GsReport *report);

// The exit code the command line would use: 0, 1 or 2; −1 for null.
//
// # Safety
// `report` must be null or a live report handle.
int32_t gs_report_exit_code(const struct GsReport *report);

// The report as JSON.  The string is owned by the report and lives until
// [`gs_report_free`].
//
// # Safety
// `report` must be null or a live report handle.
const char *gs_report_json(const struct GsReport *report);

// # Safety
// `report` must be null or a report handle not yet freed.
void gs_report_free(struct GsReport *report);

// Message describing the last failure on this thread, or null.  Valid
// until the next call into the library on the same thread.
const char *gs_last_error(void);

// Static name of a status code.
const char *gs_status_name(enum GsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMMASPEC_H */
