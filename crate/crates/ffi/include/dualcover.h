#ifndef DUALCOVER_H
#define DUALCOVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcOutcome {
  DC_OUTCOME_NOT_EXTENDABLE = 0,
  DC_OUTCOME_EXTENDS_SINGULAR_TOTAL_SPACE = 1,
  DC_OUTCOME_EQUIVALENT_TO_PROJECTION = 2,
  DC_OUTCOME_EXCLUDED_CASE = 3,
} DcOutcome;

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_ARGUMENT = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  // The input was rejected: malformed text or a hypothesis that fails.
  DC_STATUS_REFUSED = 3,
  // The computation itself failed.
  DC_STATUS_FAILED = 4,
  // The result does not fit the output type.
  DC_STATUS_OVERFLOW = 5,
  DC_STATUS_PANIC = 6,
} DcStatus;

// A curve with its dual and the braid monodromy of the dual.
typedef struct DcAnalysis DcAnalysis;

// A plane curve in x, y, z.
typedef struct DcCurve DcCurve;

// A cover of the line given by permutations of the fiber generators.
typedef struct DcRep DcRep;

// Summary numbers of an analysis.
typedef struct DcCounts {
  uint32_t degree;
  uint32_t dual_degree;
  uint32_t source_nodes;
  uint32_t dual_nodes;
  uint32_t dual_cusps;
  uint32_t factors;
  uint32_t tangencies;
  // 1 when the curve is general enough, else 0.
  uint8_t generic;
} DcCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *dc_last_error(void);

// Library version as a static string.
const char *dc_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void dc_string_free(char *s);

// Parse a homogeneous polynomial in x, y, z, or the contents of a curve
// file.
//
// # Safety
// `source` must be a NUL-terminated string and `out` a valid pointer.
enum DcStatus dc_curve_parse(const char *source, struct DcCurve **out);

// # Safety
// `c` must be null or a handle from [`dc_curve_parse`], not yet freed.
void dc_curve_free(struct DcCurve *c);

// Degree of the curve, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live curve handle.
uint32_t dc_curve_degree(const struct DcCurve *c);

// Dual curve, singular points and braid monodromy of the dual, with every
// random choice drawn from `seed`.
//
// # Safety
// `c` must be a live curve handle and `out` a valid pointer.
enum DcStatus dc_analysis_run(const struct DcCurve *c, uint64_t seed, struct DcAnalysis **out);

// # Safety
// `a` must be null or a handle from [`dc_analysis_run`], not yet freed.
void dc_analysis_free(struct DcAnalysis *a);

// # Safety
// `a` must be a live analysis handle and `out` a valid pointer.
enum DcStatus dc_analysis_counts(const struct DcAnalysis *a, struct DcCounts *out);

// Braid monodromy factorization as JSON; free with [`dc_string_free`].
//
// # Safety
// `a` must be a live analysis handle and `out` a valid pointer.
enum DcStatus dc_analysis_factorization_json(const struct DcAnalysis *a, char **out);

// The cover of the line by projection of the curve from a generic point.
//
// # Safety
// `a` must be a live analysis handle and `out` a valid pointer.
enum DcStatus dc_analysis_projection(const struct DcAnalysis *a, struct DcRep **out);

// Read a rep file: `{"sheets": k, "generators": ["(1 2)", ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum DcStatus dc_rep_from_json(const char *json, struct DcRep **out);

// # Safety
// `r` must be a live rep handle and `out` a valid pointer.
enum DcStatus dc_rep_to_json(const struct DcRep *r, char **out);

// # Safety
// `r` must be null or a rep handle, not yet freed.
void dc_rep_free(struct DcRep *r);

// Number of sheets, or 0 for a null handle.
//
// # Safety
// `r` must be null or a live rep handle.
size_t dc_rep_sheets(const struct DcRep *r);

// Decide whether the cover extends over the plane and whether it is the
// projection. `bad_points` (may be null) receives the number of bad nodes
// and cusps.
//
// # Safety
// `a` and `r` must be live handles, `out` a valid pointer, `bad_points`
// null or valid.
enum DcStatus dc_verdict(const struct DcAnalysis *a,
                         const struct DcRep *r,
                         enum DcOutcome *out,
                         size_t *bad_points);

// Full verdict as JSON; free with [`dc_string_free`].
//
// # Safety
// `a` and `r` must be live handles and `out` a valid pointer.
enum DcStatus dc_verdict_json(const struct DcAnalysis *a, const struct DcRep *r, char **out);

// Number of connected simply branched `sheets`-sheeted covers of the line
// with `branch_points` branch points, up to equivalence.
//
// # Safety
// `out` must be a valid pointer.
enum DcStatus dc_count_classes(size_t sheets, size_t branch_points, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALCOVER_H */
