#include <stdio.h>
#include "eqtrace.h"

int main(void) {
    EqRootDatum *d = NULL;
    uint64_t order = 0;
    if (eqtrace_root_datum_new("A2", "root", &d) != EQ_STATUS_OK) {
        fprintf(stderr, "%s\n", eqtrace_last_error());
        return 1;
    }
    eqtrace_root_datum_schur_order(d, &order);
    eqtrace_root_datum_free(d);
    printf("%s %llu\n", eqtrace_version(), (unsigned long long)order);
    return order == 3 ? 0 : 1;
}
