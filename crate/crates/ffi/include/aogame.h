#ifndef AOGAME_H
#define AOGAME_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AogStatus {
  AOG_STATUS_OK = 0,
  AOG_STATUS_NULL_POINTER = 1,
  AOG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed graph text, generator spec or strategy descriptor.
   */
  AOG_STATUS_PARSE = 3,
  /**
   * Well-formed input that does not fit, e.g. a non-edge.
   */
  AOG_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The exact solver refused the graph as too large.
   */
  AOG_STATUS_GUARD = 5,
  /**
   * The answer would close a directed cycle.
   */
  AOG_STATUS_ILLEGAL_MOVE = 6,
  /**
   * A match aborted because a strategy misbehaved.
   */
  AOG_STATUS_MATCH_FAULT = 7,
  AOG_STATUS_PANIC = 8,
} AogStatus;

typedef enum AogEdgeKind {
  AOG_EDGE_KIND_OPEN = 0,
  AOG_EDGE_KIND_FORCED = 1,
  AOG_EDGE_KIND_QUERIED = 2,
} AogEdgeKind;

typedef struct AogGame AogGame;

typedef struct AogGraph AogGraph;

/**
 * Status of one edge. `from` and `to` are meaningful unless `kind` is open.
 */
typedef struct AogEdgeStatus {
  enum AogEdgeKind kind;
  size_t from;
  size_t to;
} AogEdgeStatus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *aog_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void aog_string_free(char *s);

/**
 * Static version string.
 */
const char *aog_version(void);

/**
 * Parses edge-list text (`n m` header then `u v` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AogStatus aog_graph_parse(const char *text, struct AogGraph **out);

/**
 * Builds a graph from a JSON generator spec such as
 * `{"kind": "complete-multipartite", "parts": [2, 2, 2]}`.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string; `out` must be writable.
 */
enum AogStatus aog_graph_generate(const char *spec_json, struct AogGraph **out);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
void aog_graph_free(struct AogGraph *g);

/**
 * Vertex count; 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t aog_graph_vertex_count(const struct AogGraph *g);

/**
 * Edge count; 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t aog_graph_edge_count(const struct AogGraph *g);

/**
 * Canonical edge-list text of the graph.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum AogStatus aog_graph_to_text(const struct AogGraph *g, char **out);

/**
 * Exact game value under the default search guard, as JSON
 * `{"value", "best", "nodes", "memo_hits"}`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum AogStatus aog_solve(const struct AogGraph *g, char **out);

/**
 * Closed-form bounds with constant `c`, as JSON `{"bounds", "approx"}`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum AogStatus aog_bounds(const struct AogGraph *g, double c, char **out);

/**
 * Plays one match between two built-in strategies, named as on the command
 * line (e.g. `exhaustive`, `greedy`). Writes the transcript JSON.
 *
 * # Safety
 * `g` must be a live handle; the descriptors NUL-terminated; `out` writable.
 */
enum AogStatus aog_simulate(const struct AogGraph *g,
                            const char *algy,
                            const char *strategist,
                            char **out);

/**
 * Starts a game on `g` with nothing revealed. The game keeps its own
 * reference to the graph, so `g` may be freed afterwards.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum AogStatus aog_game_new(const struct AogGraph *g, struct AogGame **out);

/**
 * # Safety
 * `game` must be null or a live handle from this library.
 */
void aog_game_free(struct AogGame *game);

/**
 * Reveals edge `{u, v}` as `from -> to`. Fails with `IllegalMove` if the
 * opposite direction is forced, leaving the game unchanged.
 *
 * # Safety
 * `game` must be a live handle.
 */
enum AogStatus aog_game_answer(struct AogGame *game, size_t from, size_t to);

/**
 * # Safety
 * `game` must be a live handle; `out` must be writable.
 */
enum AogStatus aog_game_edge_status(const struct AogGame *game,
                                    size_t u,
                                    size_t v,
                                    struct AogEdgeStatus *out);

/**
 * 1 when every edge is determined, 0 otherwise or for null.
 *
 * # Safety
 * `game` must be null or a live handle.
 */
int32_t aog_game_is_terminal(const struct AogGame *game);

/**
 * Number of answered queries; 0 for null.
 *
 * # Safety
 * `game` must be null or a live handle.
 */
size_t aog_game_queries(const struct AogGame *game);

/**
 * Number of acyclic orientations consistent with the answers so far.
 *
 * # Safety
 * `game` must be a live handle; `out` must be writable.
 */
enum AogStatus aog_game_extension_count(const struct AogGame *game, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AOGAME_H */
