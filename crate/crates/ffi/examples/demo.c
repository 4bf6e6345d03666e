#include "ade_spectra.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    AdeGraph *g = NULL;
    if (ade_graph_new("A(4)", &g) != ADE_STATUS_OK) return 1;
    uint64_t n = 0;
    if (ade_graph_loop_count(g, 4, &n) != ADE_STATUS_OK) return 2;
    char *t = NULL;
    if (ade_graph_t_series(g, &t) != ADE_STATUS_OK) return 3;
    printf("loop(8) = %llu, T = %s\n", (unsigned long long)n, t);
    ade_string_free(t);
    ade_graph_free(g);

    AdeGraph *bad = NULL;
    if (ade_graph_new("B(9)", &bad) != ADE_STATUS_INVALID_ARGUMENT) return 4;
    char *msg = ade_last_error_message();
    printf("error channel: %s\n", msg);
    ade_string_free(msg);

    char *json = NULL;
    if (ade_decompose_json("E7", &json) != ADE_STATUS_OK) return 5;
    int infeasible = strstr(json, "\"outcome\":\"infeasible\"") != NULL;
    ade_string_free(json);
    return (n == 13 && infeasible) ? 0 : 6;
}
