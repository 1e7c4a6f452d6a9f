/* Minimal C consumer of the gqc library. Exits 0 on success. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "gqc.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,  \
              gqc_last_error_message());                               \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  GqcState *state = NULL;
  CHECK(gqc_state_from_sts(0.6, 0.0, 1.0, &state) == GQC_STATUS_OK);

  GqcReport report;
  CHECK(gqc_state_report(state, &report) == GQC_STATUS_OK);
  CHECK(fabs(report.e_ab - 0.649166418921071) < 1e-12);
  CHECK(fabs(report.e_ba - 1.144465439583155) < 1e-12);

  GqcClassFlags flags;
  GqcLabel label;
  CHECK(gqc_state_classify(state, &flags, &label) == GQC_STATUS_OK);
  CHECK(flags.steer_ab && !flags.steer_ba);
  CHECK(strcmp(gqc_label_name(label), "ONE_WAY_STEER_AB") == 0);

  GqcTeleport tp;
  CHECK(gqc_state_teleport(state, &tp) == GQC_STATUS_OK);
  CHECK(tp.direction == GQC_DIRECTION_A_TO_B);
  gqc_state_free(state);

  CHECK(gqc_state_from_cm(1.0, 1.0, 0.5, &state) == GQC_STATUS_OK);
  bool physical = true;
  CHECK(gqc_state_is_physical(state, &physical) == GQC_STATUS_OK);
  CHECK(!physical);
  CHECK(gqc_state_report(state, &report) == GQC_STATUS_UNPHYSICAL);
  CHECK(gqc_state_teleport(state, &tp) == GQC_STATUS_UNPHYSICAL);
  CHECK(strlen(gqc_last_error_message()) > 0);
  gqc_state_free(state);

  CHECK(gqc_state_from_sts(-1.0, 0.0, 0.0, &state) == GQC_STATUS_INVALID_ARGUMENT);

  GqcThresholds t;
  CHECK(gqc_thresholds(1.0, 1.0, &t) == GQC_STATUS_OK);
  CHECK(fabs(t.r_ent - 0.5493061443340548) < 1e-14);

  char *csv = NULL;
  const char *spec =
      "{\"mode\":\"STS_NOISE_GRID\",\"fixed\":0.6,"
      "\"axis1\":{\"lo\":0,\"hi\":1,\"steps\":2},"
      "\"axis2\":{\"lo\":0,\"hi\":1,\"steps\":2},\"quantities\":[\"E_AB\"]}";
  CHECK(gqc_scan(spec, GQC_SCAN_FORMAT_CSV, &csv) == GQC_STATUS_OK);
  CHECK(strncmp(csv, "axis1,axis2,E_AB,label\n", 23) == 0);
  gqc_string_free(csv);

  printf("gqc %s smoke ok\n", gqc_version());
  return 0;
}
