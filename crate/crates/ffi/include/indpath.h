#ifndef INDPATH_H
#define INDPATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Return code of every fallible call.
typedef enum IndpathStatus {
  INDPATH_STATUS_OK = 0,
  INDPATH_STATUS_NULL_POINTER = 1,
  INDPATH_STATUS_INVALID_ARGUMENT = 2,
  INDPATH_STATUS_PARSE_ERROR = 3,
  INDPATH_STATUS_GRAPH_ERROR = 4,
  INDPATH_STATUS_SOLVE_ERROR = 5,
  INDPATH_STATUS_BUDGET_EXCEEDED = 6,
  INDPATH_STATUS_PANIC = 7,
} IndpathStatus;

typedef enum IndpathModel {
  INDPATH_MODEL_CUT = 0,
  INDPATH_MODEL_FLOW = 1,
  INDPATH_MODEL_WALK = 2,
} IndpathModel;

// Outcome of a solve.
typedef enum IndpathOutcome {
  INDPATH_OUTCOME_OPTIMAL = 0,
  INDPATH_OUTCOME_TIMEOUT = 1,
  INDPATH_OUTCOME_INFEASIBLE = 2,
} IndpathOutcome;

// Opaque simple undirected graph.
typedef struct IndpathGraph IndpathGraph;

// Opaque solve or oracle result.
typedef struct IndpathResult IndpathResult;

// Solver configuration; start from [`indpath_config_default`].
typedef struct IndpathConfig {
  enum IndpathModel model;
  bool node_vars;
  bool cliques;
  // Clique rows for all cliques up to this size; 0 uses maximal cliques.
  size_t clique_bound;
  bool frac_sep;
  // Fixed walk horizon; negative raises the horizon from the diameter.
  int64_t walk_horizon;
  // Wall-clock limit in seconds; zero or negative means no limit.
  double time_limit_seconds;
} IndpathConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *indpath_last_error(void);

// Builds a graph on `n` nodes from `m` edges stored as `2 * m` node ids.
//
// # Safety
// `edges` must point to `2 * m` readable values (it may be null when `m` is 0)
// and `out` must be writable.
enum IndpathStatus indpath_graph_new(size_t n,
                                     const size_t *edges,
                                     size_t m,
                                     struct IndpathGraph **out);

// Parses edge-list text (`u v` per line, `#` comments).
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum IndpathStatus indpath_graph_parse(const char *text, struct IndpathGraph **out);

// Releases a graph; null is ignored.
//
// # Safety
// `g` must come from this library and not be used afterwards.
void indpath_graph_free(struct IndpathGraph *g);

// Writes the node and edge counts.
//
// # Safety
// `g` must be a live graph; `n` and `m` writable.
enum IndpathStatus indpath_graph_counts(const struct IndpathGraph *g, size_t *n, size_t *m);

// Cut model, integral separation only, 1200 s limit.
struct IndpathConfig indpath_config_default(void);

// Solves the longest induced path problem; the graph must be connected.
//
// # Safety
// `g` must be a live graph, `config` readable (null selects the default) and
// `out` writable.
enum IndpathStatus indpath_solve(const struct IndpathGraph *g,
                                 const struct IndpathConfig *config,
                                 struct IndpathResult **out);

// Exhaustive search, failing with `BudgetExceeded` after `budget` steps.
//
// # Safety
// `g` must be a live graph and `out` writable.
enum IndpathStatus indpath_oracle(const struct IndpathGraph *g,
                                  uint64_t budget,
                                  struct IndpathResult **out);

// Releases a result; null is ignored.
//
// # Safety
// `r` must come from this library and not be used afterwards.
void indpath_result_free(struct IndpathResult *r);

// # Safety
// `r` must be a live result.
enum IndpathOutcome indpath_result_outcome(const struct IndpathResult *r);

// Edges on the best path found.
//
// # Safety
// `r` must be a live result.
size_t indpath_result_value(const struct IndpathResult *r);

// Proven upper bound on the optimum.
//
// # Safety
// `r` must be a live result.
size_t indpath_result_dual_bound(const struct IndpathResult *r);

// Number of nodes on the path.
//
// # Safety
// `r` must be a live result.
size_t indpath_result_path_len(const struct IndpathResult *r);

// Copies up to `cap` path nodes into `buf`; returns the number copied.
//
// # Safety
// `r` must be a live result and `buf` must have room for `cap` values.
size_t indpath_result_path(const struct IndpathResult *r, size_t *buf, size_t cap);

// # Safety
// `r` must be a live result.
size_t indpath_result_bnb_nodes(const struct IndpathResult *r);

// # Safety
// `r` must be a live result.
size_t indpath_result_cuts(const struct IndpathResult *r);

// # Safety
// `r` must be a live result.
double indpath_result_root_lp(const struct IndpathResult *r);

// # Safety
// `r` must be a live result.
double indpath_result_seconds(const struct IndpathResult *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INDPATH_H */
