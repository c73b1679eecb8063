/*
 * specnet C API.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function (passing NULL is allowed). Every fallible call
 * returns a specnet_status; on failure specnet_last_error() describes the
 * problem for the calling thread until its next failing call. Strings
 * returned through char** out-parameters are released with
 * specnet_string_free.
 */
#ifndef SPECNET_SPECNET_H
#define SPECNET_SPECNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPECNET_BUILDING)
#    define SPECNET_API __declspec(dllexport)
#  else
#    define SPECNET_API __declspec(dllimport)
#  endif
#else
#  define SPECNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum specnet_status {
  SPECNET_OK = 0,
  SPECNET_INVALID_ARGUMENT = 2,
  SPECNET_INFEASIBLE = 3,
  SPECNET_NOT_CONVERGED = 4,
  SPECNET_DISCONNECTED = 5,
  SPECNET_EMPTY_FAN_SET = 6,
  SPECNET_NUMERICAL = 7,
  SPECNET_IO = 8,
  SPECNET_INTERNAL = 9
} specnet_status;

typedef enum specnet_broker_variant {
  SPECNET_BROKER_WEAK = 0,
  SPECNET_BROKER_STRONG = 1
} specnet_broker_variant;

typedef struct specnet_graph specnet_graph;
typedef struct specnet_result specnet_result;
typedef struct specnet_clustering specnet_clustering;
typedef struct specnet_fans specnet_fans;
typedef struct specnet_condensed specnet_condensed;
typedef struct specnet_comparison specnet_comparison;

/* Zero in penalty_rho or step_eta0 selects the size-dependent default
 * (10 n and 1 / n). */
typedef struct specnet_solver_config {
  double outer_tol;
  int outer_max_iter;
  double inner_tol;
  int inner_max_iter;
  int inner_patience;
  double penalty_rho;
  int penalty_doublings;
  double step_eta0;
  double feasibility_tol;
  double smoothing_mu0;
  double smoothing_decay;
  double smoothing_floor;
  double init_density;
} specnet_solver_config;

typedef struct specnet_start_info {
  uint64_t seed;
  double objective;
  double lambda2;
  int outer_iterations;
  int converged;
  int failed;
  const char* stop_reason; /* static string, do not free */
  double max_violation;
  double final_rho;
} specnet_start_info;

typedef struct specnet_fan_info {
  int liaison;
  int home;
  int target;
  int tie_count;
  double total_weight;
} specnet_fan_info;

typedef struct specnet_comparison_row {
  double objective;
  double lambda2;
  double mixing_deviation;
  double modularity_deviation;
} specnet_comparison_row;

/* ---- library ---------------------------------------------------------- */

SPECNET_API const char* specnet_version(void);
/* Message for the last failing call on this thread; empty after a success. */
SPECNET_API const char* specnet_last_error(void);
SPECNET_API const char* specnet_status_name(specnet_status status);
SPECNET_API void specnet_string_free(char* s);

/* ---- graphs ----------------------------------------------------------- */

/* Validates a symmetric doubly stochastic nonnegative n x n row-major matrix. */
SPECNET_API specnet_status specnet_graph_from_dense(int n, const double* weights,
                                                    specnet_graph** out);
/* Normalizes a nonnegative matrix with symmetric Sinkhorn iteration.
 * tol <= 0 or max_iter <= 0 select the defaults. */
SPECNET_API specnet_status specnet_graph_sinkhorn(int n, const double* raw, double tol,
                                                  int max_iter, specnet_graph** out);
SPECNET_API specnet_status specnet_graph_uniform(int n, specnet_graph** out);
SPECNET_API specnet_status specnet_graph_block_diagonal(const specnet_graph* const* blocks,
                                                        int count, specnet_graph** out);
SPECNET_API specnet_status specnet_graph_clone(const specnet_graph* g, specnet_graph** out);
SPECNET_API void specnet_graph_free(specnet_graph* g);

/* Accepts graph JSON or a design result JSON. */
SPECNET_API specnet_status specnet_graph_load_json(const char* path, specnet_graph** out);
SPECNET_API specnet_status specnet_graph_load_csv(const char* path, specnet_graph** out);
/* metadata_json may be NULL; otherwise it must be a JSON object. */
SPECNET_API specnet_status specnet_graph_save_json(const specnet_graph* g, const char* path,
                                                   const char* metadata_json);
SPECNET_API specnet_status specnet_graph_save_csv(const specnet_graph* g, const char* path);
/* clustering may be NULL; ties below display_threshold are not drawn. */
SPECNET_API specnet_status specnet_graph_save_dot(const specnet_graph* g,
                                                  const specnet_clustering* clustering,
                                                  double display_threshold, const char* path);
SPECNET_API specnet_status specnet_graph_metadata(const specnet_graph* g, char** out_json);

SPECNET_API int specnet_graph_n(const specnet_graph* g);
SPECNET_API specnet_status specnet_graph_weights(const specnet_graph* g, double* out);
/* Ascending Laplacian eigenvalues, out holds n values. */
SPECNET_API specnet_status specnet_graph_spectrum(const specnet_graph* g, double* out);
SPECNET_API specnet_status specnet_graph_components(const specnet_graph* g, double tol,
                                                    int* out);
/* lambda_{ell+1} - lambda_ell */
SPECNET_API specnet_status specnet_graph_objective(const specnet_graph* g, int ell,
                                                   double* out);
SPECNET_API specnet_status specnet_graph_kyfan(const specnet_graph* g, int k, double* out);
SPECNET_API specnet_status specnet_graph_max_abs_diff(const specnet_graph* a,
                                                      const specnet_graph* b, double* out);

/* ---- bound ------------------------------------------------------------ */

/* Evaluates the bound for any finite m >= 0; it is <= 0 once m >= n/(n-1). */
SPECNET_API specnet_status specnet_bound(int n, int ell, double m, double* out);
/* out holds n values: 0, m (ell - 1 times), then the plateau value. */
SPECNET_API specnet_status specnet_ideal_spectrum(int n, int ell, double m, double* out);

/* ---- design ----------------------------------------------------------- */

SPECNET_API void specnet_solver_config_default(specnet_solver_config* cfg);
SPECNET_API specnet_status specnet_derive_seeds(uint64_t base, int count, uint64_t* out);
/* Starts use seeds derived from base_seed. */
SPECNET_API specnet_status specnet_design(int n, int ell, double m, uint64_t base_seed,
                                          int starts, int parallelism,
                                          const specnet_solver_config* cfg,
                                          specnet_result** out);
/* Explicit, pairwise distinct seeds. */
SPECNET_API specnet_status specnet_design_with_seeds(int n, int ell, double m,
                                                     const uint64_t* seeds, int count,
                                                     int parallelism,
                                                     const specnet_solver_config* cfg,
                                                     specnet_result** out);
SPECNET_API void specnet_result_free(specnet_result* r);
SPECNET_API double specnet_result_objective(const specnet_result* r);
SPECNET_API double specnet_result_lambda2(const specnet_result* r);
SPECNET_API double specnet_result_bound(const specnet_result* r);
SPECNET_API double specnet_result_ratio(const specnet_result* r);
SPECNET_API uint64_t specnet_result_best_seed(const specnet_result* r);
SPECNET_API double specnet_result_wall_time(const specnet_result* r);
SPECNET_API int specnet_result_start_count(const specnet_result* r);
SPECNET_API specnet_status specnet_result_start(const specnet_result* r, int index,
                                                specnet_start_info* out);
SPECNET_API int specnet_result_trace_length(const specnet_result* r, int index);
SPECNET_API specnet_status specnet_result_trace(const specnet_result* r, int index,
                                                double* out);
SPECNET_API specnet_status specnet_result_graph(const specnet_result* r, specnet_graph** out);
SPECNET_API specnet_status specnet_result_save_json(const specnet_result* r, const char* path);
SPECNET_API specnet_status specnet_result_save_trace(const specnet_result* r,
                                                     const char* path);

/* ---- analysis --------------------------------------------------------- */

SPECNET_API specnet_status specnet_quarter_mean_weight(const specnet_graph* g, double* out);
SPECNET_API specnet_status specnet_truncate(const specnet_graph* g, double threshold,
                                            specnet_graph** out);
SPECNET_API specnet_status specnet_truncate_keep_top(const specnet_graph* g, int keep,
                                                     specnet_graph** out);

SPECNET_API specnet_status specnet_cluster(const specnet_graph* g, int ell, uint64_t seed,
                                           specnet_clustering** out);
SPECNET_API specnet_status specnet_clustering_from_assignment(const specnet_graph* g,
                                                              const int* assignment,
                                                              specnet_clustering** out);
SPECNET_API specnet_status specnet_clustering_load_json(const specnet_graph* g,
                                                        const char* path,
                                                        specnet_clustering** out);
SPECNET_API void specnet_clustering_free(specnet_clustering* c);
SPECNET_API int specnet_clustering_n(const specnet_clustering* c);
SPECNET_API int specnet_clustering_count(const specnet_clustering* c);
SPECNET_API specnet_status specnet_clustering_assignment(const specnet_clustering* c,
                                                         int* out);
SPECNET_API specnet_status specnet_clustering_intra_mass(const specnet_clustering* c,
                                                         double* out);
SPECNET_API specnet_status specnet_clustering_save_json(const specnet_clustering* c,
                                                        const char* path);

SPECNET_API specnet_status specnet_detect_fans(const specnet_graph* g,
                                               const specnet_clustering* c, double fan_tol,
                                               specnet_fans** out);
SPECNET_API void specnet_fans_free(specnet_fans* f);
SPECNET_API int specnet_fans_count(const specnet_fans* f);
SPECNET_API specnet_status specnet_fans_get(const specnet_fans* f, int index,
                                            specnet_fan_info* out);
SPECNET_API specnet_status specnet_fans_tie(const specnet_fans* f, int index, int tie,
                                            int* node, double* weight);
SPECNET_API specnet_status specnet_fans_save_json(const specnet_fans* f, const char* path);

/* Raw (pre-normalization) broker matrix, n x n row-major. */
SPECNET_API specnet_status specnet_broker_raw(const specnet_graph* g,
                                              const specnet_clustering* c,
                                              const specnet_fans* f,
                                              specnet_broker_variant variant, double* out);
SPECNET_API specnet_status specnet_brokerize(const specnet_graph* g,
                                             const specnet_clustering* c,
                                             const specnet_fans* f,
                                             specnet_broker_variant variant,
                                             specnet_graph** out);

SPECNET_API specnet_status specnet_condense(const specnet_clustering* c, const specnet_fans* f,
                                            specnet_condensed** out);
SPECNET_API void specnet_condensed_free(specnet_condensed* d);
SPECNET_API int specnet_condensed_clusters(const specnet_condensed* d);
SPECNET_API int specnet_condensed_is_dag(const specnet_condensed* d);
SPECNET_API int specnet_condensed_edge_count(const specnet_condensed* d);
SPECNET_API specnet_status specnet_condensed_edge(const specnet_condensed* d, int index,
                                                  int* from, int* to);
/* out holds one value per cluster. */
SPECNET_API specnet_status specnet_condensed_out_degrees(const specnet_condensed* d, int* out);
SPECNET_API specnet_status specnet_condensed_save_json(const specnet_condensed* d,
                                                       const char* path);
SPECNET_API specnet_status specnet_condensed_save_dot(const specnet_condensed* d,
                                                      const char* path);

/* names may be NULL, giving "graph0", "graph1", ... */
SPECNET_API specnet_status specnet_compare(const specnet_graph* const* graphs,
                                           const char* const* names, int count, int ell,
                                           double m, specnet_comparison** out);
SPECNET_API void specnet_comparison_free(specnet_comparison* c);
SPECNET_API int specnet_comparison_rows(const specnet_comparison* c);
SPECNET_API int specnet_comparison_n(const specnet_comparison* c);
SPECNET_API double specnet_comparison_bound(const specnet_comparison* c);
SPECNET_API specnet_status specnet_comparison_row_info(const specnet_comparison* c, int index,
                                                       specnet_comparison_row* out);
SPECNET_API specnet_status specnet_comparison_row_name(const specnet_comparison* c, int index,
                                                       char** out);
SPECNET_API specnet_status specnet_comparison_row_spectrum(const specnet_comparison* c,
                                                           int index, double* out);
SPECNET_API int specnet_comparison_closest_mixing(const specnet_comparison* c);
SPECNET_API int specnet_comparison_closest_modularity(const specnet_comparison* c);
SPECNET_API specnet_status specnet_comparison_save_csv(const specnet_comparison* c,
                                                       const char* path);

#ifdef __cplusplus
}
#endif

#endif /* SPECNET_SPECNET_H */
