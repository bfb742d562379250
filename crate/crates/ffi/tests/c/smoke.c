#include <stdio.h>
#include <string.h>

#include "gammaspec.h"

static int expect(int ok, const char *what) {
    if (!ok) {
        const char *e = gs_last_error();
        fprintf(stderr, "failed: %s (%s)\n", what, e ? e : "no message");
    }
    return ok ? 0 : 1;
}

int main(void) {
    int failures = 0;
    GsRing *ring = NULL;
    failures += expect(gs_ring_parse("F5", &ring) == GS_STATUS_OK, "parse F5");
    failures += expect(gs_ring_unit_count(ring) == 4, "four units");

    GsConfig config = gs_config_default();
    GsReport *report = NULL;
    failures += expect(gs_gl1(ring, &config, &report) == GS_STATUS_OK, "gl1 F5");
    failures += expect(gs_report_passed(report), "report passed");
    failures += expect(strstr(gs_report_json(report), "\"Z/4\"") != NULL, "units Z/4 in report");
    gs_report_free(report);

    config.truncation = 2;
    config.k_max = 0;
    failures += expect(gs_gl1(ring, &config, &report) == GS_STATUS_CONFIGURATION, "D = 2 is too small");
    failures += expect(gs_report_exit_code(report) == 2, "exit code 2");
    gs_report_free(report);
    gs_ring_free(ring);

    const char *argv[] = {"hocolim", "--ring", "F5"};
    failures += expect(gs_run(argv, 3, &report) == GS_STATUS_OK, "hocolim");
    failures += expect(strstr(gs_report_json(report), "\"components\": 5") != NULL, "five components");
    gs_report_free(report);

    if (failures == 0) puts("c smoke test passed");
    return failures;
}
