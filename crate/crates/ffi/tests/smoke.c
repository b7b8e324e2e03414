#include <stdio.h>
#include <string.h>
#include "arithgraph.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, arith_last_error()); return 1; } } while (0)

int main(void) {
    ArithStructureSet *set = NULL;
    size_t count = 0, vertices = 0;
    bool complete = false;
    CHECK(arith_enumerate_certified(ARITH_FAMILY_STAR, 4, &set) == ARITH_STATUS_OK);
    CHECK(arith_set_info(set, &count, &vertices, &complete) == ARITH_STATUS_OK);
    CHECK(count == 263 && vertices == 5 && complete);
    arith_set_free(set);

    ArithMatrix *w3 = NULL;
    CHECK(arith_graph_adjacency(ARITH_FAMILY_WHEEL, 3, &w3) == ARITH_STATUS_OK);
    uint64_t d[4] = {3, 3, 3, 3}, r[4] = {1, 1, 1, 1}, factors[4];
    CHECK(arith_critical_group(w3, d, r, 4, factors, 4, &count) == ARITH_STATUS_OK);
    CHECK(count == 2 && factors[0] == 4 && factors[1] == 4);

    uint64_t bad[4] = {9, 9, 9, 9};
    ArithWheelCase c;
    CHECK(arith_classify_wheel(3, bad, &c) == ARITH_STATUS_NOT_A_STRUCTURE);
    CHECK(strlen(arith_last_error()) > 0);
    arith_matrix_free(w3);
    printf("ok\n");
    return 0;
}
