#ifndef GSAMPLE_GSAMPLE_H
#define GSAMPLE_GSAMPLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GS_API __declspec(dllexport)
#else
#define GS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gs_status {
  GS_OK = 0,
  GS_ERR_INVALID_ARGUMENT = 1,
  GS_ERR_IO = 2,
  GS_ERR_PARSE = 3,
  GS_ERR_EMPTY_GRAPH = 4,
  GS_ERR_UNKNOWN_NODE = 5,
  GS_ERR_UNSUPPORTED = 6,
  GS_ERR_CONVERGENCE = 7,
  GS_ERR_INTERNAL = 99
} gs_status;

typedef struct gs_graph gs_graph;
typedef struct gs_sample gs_sample;
typedef struct gs_profile gs_profile;
typedef struct gs_report gs_report;

/* Message of the last failing call on this thread; "" after success. */
GS_API const char* gs_last_error(void);
GS_API const char* gs_status_name(gs_status status);
GS_API const char* gs_version(void);

/* ---- graphs ------------------------------------------------------------ */

GS_API gs_status gs_graph_load(const char* path, int skip_self_loops, int dedupe,
                               gs_graph** out);
/* Edge list plus the isolated nodes listed in an adjacent .meta.json. */
GS_API gs_status gs_graph_load_sample(const char* path, gs_graph** out);
GS_API gs_status gs_graph_from_edges(const int64_t* u, const int64_t* v, size_t m,
                                     gs_graph** out);
GS_API void gs_graph_free(gs_graph* g);
GS_API size_t gs_graph_num_nodes(const gs_graph* g);
GS_API size_t gs_graph_num_edges(const gs_graph* g);
GS_API gs_status gs_graph_write(const gs_graph* g, const char* path);

/* ---- sampling ---------------------------------------------------------- */

typedef struct gs_sample_params {
  double phi;               /* fraction of nodes, ignored when nodes > 0 */
  size_t nodes;             /* explicit target n; wins over phi */
  uint64_t seed;            /* sampler seed */
  double burn_probability;  /* ffs, default 0.7 */
  size_t window;            /* stream-bfs, default 100 */
  size_t reservoir_edges;   /* stream-es, 0 means n */
  uint64_t stream_seed;     /* stream methods: edge permutation seed */
  int keyed_hash_order;     /* nonzero: hash-sorted stream order */
} gs_sample_params;

GS_API void gs_sample_params_init(gs_sample_params* p);
GS_API size_t gs_method_count(void);
GS_API const char* gs_method_name(size_t i);

GS_API gs_status gs_sample_run(const gs_graph* g, const char* method,
                               const gs_sample_params* params, gs_sample** out);
/* Stream methods over an edge-list file replayed in file order (for
 * example the output of gs_permute_write); N counts the file's nodes. */
GS_API gs_status gs_sample_run_file_stream(const char* path, const char* method,
                                           const gs_sample_params* params,
                                           gs_sample** out);
/* Borrowed; valid until gs_sample_free. */
GS_API const gs_graph* gs_sample_graph(const gs_sample* s);
/* Borrowed JSON text; valid until gs_sample_free. */
GS_API const char* gs_sample_metadata_json(const gs_sample* s);
/* Edge list at path plus path.meta.json. */
GS_API gs_status gs_sample_write(const gs_sample* s, const char* path);
GS_API void gs_sample_free(gs_sample* s);

/* Writes the permuted edge stream, one edge per line, in stream order. */
GS_API gs_status gs_permute_write(const gs_graph* g, uint64_t seed, int keyed_hash_order,
                                  const char* path);

/* ---- statistics -------------------------------------------------------- */

typedef struct gs_profile_params {
  size_t path_exact_limit; /* exact path lengths up to this many nodes */
  size_t path_sources;     /* BFS sources above the limit */
  size_t eigenvalues;      /* default 25 */
  size_t network_values;   /* default 100 */
  double eigen_tol;        /* default 1e-6 */
} gs_profile_params;

GS_API void gs_profile_params_init(gs_profile_params* p);
GS_API gs_status gs_profile_compute(const gs_graph* g, const gs_profile_params* params,
                                    gs_profile** out);
GS_API gs_status gs_profile_write(const gs_profile* p, const char* dir);
GS_API gs_status gs_profile_read(const char* dir, gs_profile** out);
GS_API void gs_profile_free(gs_profile* p);
GS_API uint32_t gs_profile_max_core(const gs_profile* p);
GS_API double gs_profile_clustering_mean(const gs_profile* p);
/* Copies up to cap values; returns the total available. */
GS_API size_t gs_profile_eigenvalues(const gs_profile* p, double* buf, size_t cap);

/* ---- comparison -------------------------------------------------------- */

GS_API gs_status gs_compare(const gs_profile* truth, const gs_profile* sample,
                            double alpha, gs_report** out);
/* NaN when the statistic/measure pair is absent or undefined. */
GS_API double gs_report_value(const gs_report* r, const char* statistic,
                              const char* measure);
GS_API double gs_report_mean_ks(const gs_report* r);
GS_API gs_status gs_report_write(const gs_report* r, const char* path);
GS_API void gs_report_free(gs_report* r);

/* ---- experiments ------------------------------------------------------- */

/* jobs = 0 keeps the config's setting. */
GS_API gs_status gs_eval_run(const char* config_path, const char* out_dir, unsigned jobs);

typedef struct gs_classify_params {
  const double* labeled_fracs; /* NULL: 0.1 .. 0.8 */
  size_t num_labeled_fracs;
  size_t folds;                /* default 5 */
  size_t trials;               /* default 1 */
  uint64_t seed;
} gs_classify_params;

GS_API void gs_classify_params_init(gs_classify_params* p);
/* Writes the AUC table for the full graph and the sampled subgraphs. */
GS_API gs_status gs_classify_run(const gs_graph* g, const char* labels_path,
                                 const char* method, const gs_sample_params* sample,
                                 const gs_classify_params* params, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* GSAMPLE_GSAMPLE_H */
