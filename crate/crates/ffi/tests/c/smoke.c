#include <stdio.h>
#include "gic.h"

int main(void) {
    GicDatum *d = NULL;
    GicRun *r = NULL;
    char *entry = NULL;
    if (gic_datum_from_gl("glq:0,1;n=1", gic_conventions_default(), &d) != GIC_STATUS_OK) {
        fprintf(stderr, "%s\n", gic_last_error_message());
        return 1;
    }
    if (gic_run(d, &r) != GIC_STATUS_OK || gic_run_f_entry(r, 1, 0, 1, &entry) != GIC_STATUS_OK) {
        return 1;
    }
    printf("%s\n", entry);
    gic_string_free(entry);
    gic_run_free(r);
    gic_datum_free(d);
    return 0;
}
