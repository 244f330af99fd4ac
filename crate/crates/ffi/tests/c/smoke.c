#include <stdio.h>
#include <string.h>

#include "aogame.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);   \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    AogGraph *g = NULL;
    CHECK(aog_graph_parse("3 3\n0 1\n1 2\n0 2\n", &g) == AOG_STATUS_OK);
    CHECK(aog_graph_vertex_count(g) == 3 && aog_graph_edge_count(g) == 3);

    char *json = NULL;
    CHECK(aog_solve(g, &json) == AOG_STATUS_OK);
    CHECK(strstr(json, "\"value\":3") != NULL);
    aog_string_free(json);

    AogGame *game = NULL;
    CHECK(aog_game_new(g, &game) == AOG_STATUS_OK);
    aog_graph_free(g);
    CHECK(aog_game_answer(game, 0, 1) == AOG_STATUS_OK);
    CHECK(aog_game_answer(game, 1, 2) == AOG_STATUS_OK);

    AogEdgeStatus st;
    CHECK(aog_game_edge_status(game, 2, 0, &st) == AOG_STATUS_OK);
    CHECK(st.kind == AOG_EDGE_KIND_FORCED && st.from == 0 && st.to == 2);
    CHECK(aog_game_is_terminal(game) == 1);
    CHECK(aog_game_answer(game, 2, 0) == AOG_STATUS_ILLEGAL_MOVE);
    CHECK(aog_last_error() != NULL && strstr(aog_last_error(), "cycle") != NULL);
    CHECK(aog_game_queries(game) == 2);
    aog_game_free(game);

    CHECK(aog_graph_parse("oops", &g) == AOG_STATUS_PARSE);
    printf("ok %s\n", aog_version());
    return 0;
}
