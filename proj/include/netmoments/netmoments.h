/* C interface to the netmoments library.
 *
 * Every object is an opaque handle released by its own *_free function.
 * Functions return an nm_status; on failure the message is available from
 * nm_last_error() on the calling thread until the next failing call.
 * Strings returned through char** outputs are owned by the caller and
 * released with nm_string_free. */
#ifndef NETMOMENTS_H
#define NETMOMENTS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NM_API __declspec(dllexport)
#else
#define NM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nm_status {
  NM_OK = 0,
  NM_ERR_INVALID_ARGUMENT = 1,
  NM_ERR_PARSE = 2,
  NM_ERR_IO = 3,
  NM_ERR_OVERFLOW = 4,
  NM_ERR_EMPTY_SLICE = 5,
  NM_ERR_DEGENERATE = 6,
  NM_ERR_INTERNAL = 99
} nm_status;

typedef enum nm_count_mode { NM_NONINDUCED = 0, NM_INDUCED = 1 } nm_count_mode;

typedef struct nm_graph nm_graph;
typedef struct nm_motif_list nm_motif_list;
typedef struct nm_merge_table nm_merge_table;
typedef struct nm_graphon nm_graphon;
typedef struct nm_sample nm_sample;

NM_API const char* nm_version(void);
NM_API const char* nm_last_error(void);
NM_API void nm_string_free(char* s);
NM_API const char* nm_status_name(nm_status status);

/* graphs */
NM_API nm_status nm_graph_load_file(const char* path, int index_base, int drop_self_loops, nm_graph** out);
NM_API nm_status nm_graph_load_string(const char* text, int index_base, int drop_self_loops, nm_graph** out);
/* `pairs` holds 2 * m node indices in [0, n). */
NM_API nm_status nm_graph_from_edges(size_t n, const uint32_t* pairs, size_t m, nm_graph** out);
NM_API void nm_graph_free(nm_graph* g);
NM_API size_t nm_graph_node_count(const nm_graph* g);
NM_API uint64_t nm_graph_edge_count(const nm_graph* g);
NM_API nm_status nm_graph_largest_component(const nm_graph* g, nm_graph** out);
NM_API nm_status nm_graph_edge_density(const nm_graph* g, double* out);
/* Canonical edge list: sorted "u v" lines, 0-indexed. */
NM_API nm_status nm_graph_to_edge_list(const nm_graph* g, char** out);
NM_API nm_status nm_graph_write_file(const nm_graph* g, const char* path);

/* motifs: comma separated catalog names, or ';' separated inline edge lists */
NM_API nm_status nm_motifs_parse(const char* spec, nm_motif_list** out);
NM_API void nm_motifs_free(nm_motif_list* list);
NM_API size_t nm_motifs_size(const nm_motif_list* list);
NM_API const char* nm_motifs_name(const nm_motif_list* list, size_t i);
NM_API nm_status nm_motifs_info(const nm_motif_list* list, size_t i, int* nodes, int* edges, uint64_t* automorphisms);
/* Names of the built-in catalog, comma separated. */
NM_API const char* nm_motif_catalog(void);

/* counting; exact counts are returned as decimal strings */
NM_API nm_status nm_count(const nm_graph* g, const nm_motif_list* list, size_t i, nm_count_mode mode, char** out);
/* Writes nm_motifs_size(list) moments to `out`. */
NM_API nm_status nm_moments(const nm_graph* g, const nm_motif_list* list, nm_count_mode mode, double* out);

/* merge tables */
NM_API nm_status nm_merge_table_build(const nm_motif_list* list, size_t i, size_t j, nm_merge_table** out);
NM_API void nm_merge_table_free(nm_merge_table* t);
NM_API size_t nm_merge_table_size(const nm_merge_table* t);
/* `key` stays valid while the table lives. Any output may be NULL. */
NM_API nm_status nm_merge_table_entry(const nm_merge_table* t, size_t k, int* q, int* s, int* edges, uint64_t* c,
                                      uint64_t* automorphisms, const char** key);
NM_API int nm_merge_table_self_check(const nm_merge_table* t);
/* `holds` receives 1 or 0; `detail` (may be NULL) describes a mismatch. */
NM_API nm_status nm_verify_linearity(const nm_graph* g, const nm_motif_list* list, size_t i, size_t j, int* holds,
                                     char** detail);
NM_API nm_status nm_exact_subsample_covariance(const nm_graph* g, const nm_motif_list* list, size_t i, size_t j,
                                               size_t b, double* out);

/* graphons */
NM_API nm_status nm_rate_eval(const char* expression, double n, double* out);
NM_API nm_status nm_graphon_builtin(const char* name, double rho, nm_graphon** out);
NM_API void nm_graphon_free(nm_graphon* w);
NM_API const char* nm_graphon_name(const nm_graphon* w);
NM_API double nm_graphon_rho(const nm_graphon* w);
NM_API void nm_graphon_normalizer(const nm_graphon* w, double* value, double* std_error);
NM_API nm_status nm_graphon_sample(const nm_graphon* w, size_t n, uint64_t seed, unsigned threads, nm_graph** out);
/* P_w(R) and r!/|Aut(R)| P_w(R), each with a Monte Carlo standard error. */
NM_API nm_status nm_graphon_moment(const nm_graphon* w, const nm_motif_list* list, size_t i, size_t draws,
                                   uint64_t seed, unsigned threads, double* p_w, double* p_w_se, double* mean,
                                   double* mean_se);
NM_API nm_status nm_graphon_limiting_covariance(const nm_graphon* w, const nm_motif_list* list, size_t i, size_t j,
                                                size_t draws, uint64_t seed, unsigned threads, double* value,
                                                double* std_error);

/* subsampling */
typedef struct nm_subsample_options {
  size_t b;
  size_t n_sub;
  nm_count_mode mode;
  uint64_t seed;
  unsigned threads; /* 0: NETMOMENTS_THREADS or all cores */
} nm_subsample_options;

NM_API nm_status nm_subsample_run(const nm_graph* g, const nm_motif_list* list, const nm_subsample_options* options,
                                  nm_sample** out);
/* Rescaled copy of a raw subsample. */
NM_API nm_status nm_sample_rescale(const nm_sample* s, nm_sample** out);

typedef struct nm_reference_options {
  size_t b;
  size_t n_sub;
  nm_count_mode mode;
  uint64_t seed;
  size_t n_host; /* 0: no finite-size factor */
  size_t pool_size;
  uint64_t pool_seed;
  unsigned threads;
  int per_draw_density; /* nonzero: scale each draw by its own edge density */
} nm_reference_options;

NM_API nm_status nm_reference_sample(const nm_graphon* w, const nm_motif_list* list,
                                     const nm_reference_options* options, nm_sample** out);

NM_API void nm_sample_free(nm_sample* s);
NM_API size_t nm_sample_rows(const nm_sample* s);
NM_API size_t nm_sample_cols(const nm_sample* s);
/* Row-major rows x cols values. */
NM_API const double* nm_sample_data(const nm_sample* s);
/* Host edge density and host moments of a raw subsample; NaN / NULL otherwise. */
NM_API double nm_sample_rho_hat(const nm_sample* s);
NM_API const double* nm_sample_host_moments(const nm_sample* s);
/* CSV with a header of motif names and one row per replicate. */
NM_API nm_status nm_sample_csv(const nm_sample* s, char** out);
/* JSON: host edge density, host moments, b rho^(2e), condition number. */
NM_API nm_status nm_sample_diagnostics_json(const nm_sample* s, char** out);
NM_API nm_status nm_sample_ecdf(const nm_sample* s, const double* query, double* out);
NM_API nm_status nm_ks_distance(const nm_sample* a, const nm_sample* b, double* out);
NM_API nm_status nm_conditional_slice_json(const nm_sample* s, size_t cond_index, double target, double bandwidth,
                                           char** out);

/* network comparison; reports are versioned JSON documents */
typedef struct nm_case1_options {
  size_t n_sub;
  nm_count_mode mode;
  uint64_t seed;
  double bandwidth; /* <= 0: rule of thumb */
  unsigned threads;
} nm_case1_options;

typedef struct nm_case2_options {
  size_t b;
  size_t n_sub;
  nm_count_mode mode;
  uint64_t seed;
  int baseline;
  unsigned threads;
} nm_case2_options;

/* `cloud` may be NULL. */
NM_API nm_status nm_compare_case1(const nm_graph* large, const nm_graph* small, const nm_motif_list* list,
                                  const nm_case1_options* options, char** report, nm_sample** cloud);
/* `cloud_a` and `cloud_b` may be NULL. */
NM_API nm_status nm_compare_case2(const nm_graph* a, const nm_graph* b, const nm_motif_list* list,
                                  const nm_case2_options* options, char** report, nm_sample** cloud_a,
                                  nm_sample** cloud_b);

/* KS-error experiment */
typedef struct nm_experiment_options {
  const char* graphon;
  const size_t* ns;
  size_t n_count;
  const char* b_rule;     /* "n23", "2sqrt" or an expression in n */
  const char* rho;        /* expression in n */
  const char* motif_sets; /* e.g. "triangle;twostar+triangle"; NULL for the default six */
  nm_count_mode mode;
  size_t n_sub;
  size_t reps;
  size_t reference_size;
  uint64_t seed;
  int include_runtime;
  unsigned threads;
} nm_experiment_options;

NM_API nm_status nm_experiment_ks_error(const nm_experiment_options* options, char** csv);

#ifdef __cplusplus
}
#endif

#endif
