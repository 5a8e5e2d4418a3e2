#ifndef QUIVERHH_H
#define QUIVERHH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QhhStatus {
  QHH_STATUS_OK = 0,
  // Bad argument, unknown family, malformed DSL, scalar or tensor.
  QHH_STATUS_PARSE = 2,
  QHH_STATUS_NON_CONFLUENT = 3,
  QHH_STATUS_INFINITE_DIMENSIONAL = 4,
  // Engine self-check failed (including a caught panic).
  QHH_STATUS_CONSISTENCY = 5,
} QhhStatus;

// Computed report; create with `qhh_report_family` or `qhh_report_dsl`,
// release with `qhh_report_free`.
typedef struct QhhReport QhhReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Report for a built-in family (`torus-s`, `torus-c`, `p1p1`, `pi`,
// `kronecker`). `field`, `q` and `psi` may be null. On success `*out`
// receives a new handle.
//
// # Safety
// String arguments must be null or valid nul-terminated strings; `out`
// must be a valid pointer.
enum QhhStatus qhh_report_family(const char *family,
                                 const char *field,
                                 const char *q,
                                 const char *psi,
                                 struct QhhReport **out);

// Report for a presentation given as DSL text.
//
// # Safety
// As for [`qhh_report_family`].
enum QhhStatus qhh_report_dsl(const char *text, struct QhhReport **out);

// The report as JSON; valid until the handle is freed.
//
// # Safety
// `report` must be null or a live handle.
const char *qhh_report_json(const struct QhhReport *report);

// Number of computed HH degrees (`nmax + 1`), 0 for null.
//
// # Safety
// `report` must be null or a live handle.
size_t qhh_report_hh_len(const struct QhhReport *report);

// `dim HH^degree`, or -1 when out of range or null.
//
// # Safety
// `report` must be null or a live handle.
int64_t qhh_report_hh(const struct QhhReport *report, size_t degree);

// Rank of the cup product `HH^1 ⊗ HH^1 -> HH^2`, or -1 if not computed.
//
// # Safety
// `report` must be null or a live handle.
int64_t qhh_report_cup_rank(const struct QhhReport *report);

// Rank of the bracket on `HH^1`, or -1 if not computed.
//
// # Safety
// `report` must be null or a live handle.
int64_t qhh_report_bracket_rank(const struct QhhReport *report);

// # Safety
// `report` must be null or a handle not freed before.
void qhh_report_free(struct QhhReport *report);

// Runs the invariant suites (`full` nonzero for the full scope).
// Returns `QHH_STATUS_CONSISTENCY` if any check fails; the failing check
// names are then in [`qhh_last_error`].
enum QhhStatus qhh_run_checks(int32_t full, uint64_t seed);

// Message of the last failed call on this thread, or null. Valid until
// the next call into this library on the same thread.
const char *qhh_last_error(void);

// Engine version, a static string.
const char *qhh_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVERHH_H */
