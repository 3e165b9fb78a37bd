#include <math.h>
#include <stdio.h>
#include <string.h>

#include "hermsign.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    /* diag(1, 2) with a complex off-diagonal pair */
    const double entries[8] = {1.0, 0.0, 0.5, 0.25, 0.5, -0.25, 2.0, 0.0};
    HsMatrix *m = NULL;
    CHECK(hs_matrix_new(2, entries, 1e-10, &m) == HS_STATUS_OK);
    CHECK(hs_matrix_dim(m) == 2);

    HsBounds b;
    CHECK(hs_bounds(m, &b) == HS_STATUS_OK);
    CHECK(fabs(b.r - 1.5) < 1e-12);

    HsClass c;
    CHECK(hs_classify_classical(m, 1e-10, &c) == HS_STATUS_OK);
    CHECK(c == HS_CLASS_POSITIVE_DEFINITE);

    HsConfig cfg = hs_config_default();
    CHECK(cfg.n == 14 && cfg.trials == 5);
    HsVerdict v;
    CHECK(hs_classify_hybrid(m, &cfg, false, &v) == HS_STATUS_OK);
    CHECK(v.definiteness == HS_CLASS_POSITIVE_DEFINITE && v.stage == HS_STAGE_CLASSICAL);
    CHECK(isnan(v.mean_sigma));
    hs_matrix_free(m);

    const double skew[8] = {0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0};
    HsMatrix *bad = NULL;
    CHECK(hs_matrix_new(2, skew, 1e-10, &bad) == HS_STATUS_NOT_HERMITIAN);
    CHECK(bad == NULL);
    CHECK(strstr(hs_last_error_message(), "Hermitian") != NULL);

    double p[8];
    CHECK(hs_single_phase_distribution(0.25, 3, p, 8) == HS_STATUS_OK);
    CHECK(p[2] == 1.0);
    CHECK(hs_single_phase_distribution(0.25, 3, p, 4) == HS_STATUS_BUFFER_TOO_SMALL);

    printf("ok %s\n", hs_version());
    return 0;
}
