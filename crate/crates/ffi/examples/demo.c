#include <stdio.h>
#include "tangle_ffi.h"

int main(int argc, char **argv) {
    const char *text = argc > 1 ? argv[1] : "4 1 5 2 6 3";
    TanglePermutation *p = NULL;
    TangleStatus st = tangle_permutation_parse(text, &p);
    if (st != TANGLE_STATUS_OK) {
        fprintf(stderr, "%s: %s\n", tangle_status_str(st), tangle_last_error_message());
        return 2;
    }
    TangleDiagram *t = NULL;
    st = tangle_build_perfect(p, &t);
    if (st == TANGLE_STATUS_OK) {
        char *json = NULL;
        size_t corners = 0;
        tangle_diagram_to_json(t, &json);
        tangle_diagram_corner_count(t, &corners);
        printf("%s\ncorners: %zu\n", json, corners);
        tangle_string_free(json);
        tangle_diagram_free(t);
    } else {
        printf("%s: %s\n", tangle_status_str(st), tangle_last_error_message());
    }
    tangle_permutation_free(p);
    return st == TANGLE_STATUS_OK ? 0 : 1;
}
