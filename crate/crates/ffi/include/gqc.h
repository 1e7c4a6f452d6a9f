#ifndef GQC_H
#define GQC_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bits of `GqcClassFlags::boundary_mask`.
 */
#define GQC_BOUNDARY_ENT_PPT 1

#define GQC_BOUNDARY_DUAN (1 << 1)

#define GQC_BOUNDARY_SYMMETRIC_EPR (1 << 2)

#define GQC_BOUNDARY_STEER_AB (1 << 3)

#define GQC_BOUNDARY_STEER_BA (1 << 4)

typedef enum GqcStatus {
  GQC_STATUS_OK = 0,
  GQC_STATUS_NULL_POINTER = 1,
  GQC_STATUS_INVALID_ARGUMENT = 2,
  GQC_STATUS_NOT_STS_FORM = 3,
  GQC_STATUS_UNPHYSICAL = 4,
  GQC_STATUS_PRODUCT_STATE = 5,
  GQC_STATUS_NUMERIC = 6,
  GQC_STATUS_PANIC = 7,
} GqcStatus;

typedef enum GqcLabel {
  GQC_LABEL_UNPHYSICAL = 0,
  GQC_LABEL_PRODUCT = 1,
  GQC_LABEL_DISCORD_ONLY = 2,
  GQC_LABEL_ENTANGLED_PPT_ONLY = 3,
  GQC_LABEL_DUAN_ENTANGLED = 4,
  GQC_LABEL_ONE_WAY_STEER_AB = 5,
  GQC_LABEL_ONE_WAY_STEER_BA = 6,
  GQC_LABEL_TWO_WAY_STEER = 7,
  GQC_LABEL_SYMMETRIC_EPR = 8,
  GQC_LABEL_BOUNDARY = 9,
} GqcLabel;

typedef enum GqcDirection {
  GQC_DIRECTION_A_TO_B = 0,
  GQC_DIRECTION_B_TO_A = 1,
  GQC_DIRECTION_SYMMETRIC = 2,
} GqcDirection;

typedef enum GqcCriterion {
  GQC_CRITERION_ENT_PPT = 0,
  GQC_CRITERION_STEER_AB = 1,
  GQC_CRITERION_STEER_BA = 2,
  GQC_CRITERION_DUAN_QT = 3,
  GQC_CRITERION_DUAN_ST = 4,
} GqcCriterion;

typedef enum GqcScanFormat {
  GQC_SCAN_FORMAT_JSON = 0,
  GQC_SCAN_FORMAT_CSV = 1,
} GqcScanFormat;

/**
 * Opaque state handle.
 */
typedef struct GqcState GqcState;

typedef struct GqcCovariance {
  double n;
  double m;
  double c1;
  double c2;
} GqcCovariance;

typedef struct GqcSpectrum {
  double i1;
  double i2;
  double i3;
  double i4;
  double delta;
  double d_plus;
  double d_minus;
  double d_minus_pt;
} GqcSpectrum;

/**
 * All measures of a physical STS state. `g_sym_*` are NaN for product states.
 */
typedef struct GqcReport {
  double ent_ppt;
  double duan;
  double e_ab;
  double e_ba;
  double g_ab_opt;
  double g_ba_opt;
  double g_sym_ab;
  double g_sym_ba;
  double d_ab;
  double d_ba;
  double s_cond_ab;
  double h_cond_ab;
  double s_cond_ba;
  double h_cond_ba;
} GqcReport;

typedef struct GqcClassFlags {
  bool physical;
  bool product;
  bool discord_ab;
  bool discord_ba;
  bool entangled_ppt;
  bool duan_entangled;
  bool steer_ab;
  bool steer_ba;
  bool two_way_steer;
  bool symmetric_epr;
  uint32_t boundary_mask;
} GqcClassFlags;

typedef struct GqcTeleport {
  double fidelity_sym;
  bool secure;
  bool qt_sym;
  enum GqcDirection direction;
  double gbar;
  double condition_residual;
  /**
   * `f_g` is meaningful only when this is true.
   */
  bool has_f_g;
  double f_g;
} GqcTeleport;

typedef struct GqcThresholds {
  double r_ent;
  double r_steer_ab;
  double r_steer_ba;
  double r_qt_duan;
  double r_st_duan;
} GqcThresholds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a squeezed thermal state from `r`, `nA`, `nB`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum GqcStatus gqc_state_from_sts(double r, double n_a, double n_b, struct GqcState **out);

/**
 * Creates a state from raw STS-form entries `n, m, c` (`c1 = c`, `c2 = -c`).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum GqcStatus gqc_state_from_cm(double n, double m, double c, struct GqcState **out);

/**
 * Releases a handle. `NULL` is ignored.
 *
 * # Safety
 * `state` must come from a `gqc_state_from_*` call and not be freed twice.
 */
void gqc_state_free(struct GqcState *state);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum GqcStatus gqc_state_covariance(const struct GqcState *state, struct GqcCovariance *out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum GqcStatus gqc_state_is_physical(const struct GqcState *state, bool *out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum GqcStatus gqc_state_spectrum(const struct GqcState *state, struct GqcSpectrum *out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum GqcStatus gqc_state_report(const struct GqcState *state, struct GqcReport *out);

/**
 * Writes the class flags and label. Either out pointer may be `NULL`.
 *
 * # Safety
 * `state` must be a live handle; non-null out pointers must be valid.
 */
enum GqcStatus gqc_state_classify(const struct GqcState *state,
                                  struct GqcClassFlags *flags,
                                  enum GqcLabel *label);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum GqcStatus gqc_state_teleport(const struct GqcState *state, struct GqcTeleport *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum GqcStatus gqc_thresholds(double n_a, double n_b, struct GqcThresholds *out);

/**
 * Bisection root of one criterion; `*found` is false when the criterion
 * still fails at `r_max` (then `*r` is NaN).
 *
 * # Safety
 * `r` and `found` must be valid for writes.
 */
enum GqcStatus gqc_bisection_threshold(double n_a,
                                       double n_b,
                                       enum GqcCriterion criterion,
                                       double r_max,
                                       double *r,
                                       bool *found);

/**
 * Runs a scan described by a JSON spec and returns the CSV or JSON
 * document through `out`; release it with `gqc_string_free`.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum GqcStatus gqc_scan(const char *spec_json, enum GqcScanFormat format, char **out);

/**
 * Releases a string returned by this library. `NULL` is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void gqc_string_free(char *s);

/**
 * Stable uppercase token of a label, e.g. `"ONE_WAY_STEER_AB"`.
 */
const char *gqc_label_name(enum GqcLabel label);

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *gqc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gqc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GQC_H */
