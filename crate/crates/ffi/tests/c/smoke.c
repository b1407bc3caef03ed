#include <stdio.h>
#include <string.h>

#include "allagmatic.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    AllagCa *ca = NULL;
    char state[32];
    char err[128];
    uint32_t census[256];
    AllagSearchResult r;

    CHECK(allag_ca_new(31, 110, NULL, &ca) == ALLAG_STATUS_OK);
    CHECK(allag_ca_step(ca, 15) == ALLAG_STATUS_OK);
    CHECK(allag_ca_state(ca, state, sizeof state) == ALLAG_STATUS_OK);
    CHECK(strcmp(state, "1101011001111101000000000000000") == 0);
    allag_ca_free(ca);

    CHECK(allag_ca_new(31, 300, NULL, &ca) == ALLAG_STATUS_OUT_OF_RANGE);
    CHECK(allag_last_error_message(err, sizeof err) > 1);

    CHECK(allag_rule_census("0000000000000001000000000000000",
                            "1101011001111101000000000000000", 15, census, 256) == ALLAG_STATUS_OK);
    CHECK(census[110] == 31);

    CHECK(allag_ca_rule_search(NULL, NULL, 0.9, 15, 100000, 1, 1, &r) == ALLAG_STATUS_OK);
    CHECK(r.terminated && r.rule == 110);

    printf("c smoke ok\n");
    return 0;
}
