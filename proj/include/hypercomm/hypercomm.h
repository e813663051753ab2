#ifndef HYPERCOMM_H
#define HYPERCOMM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HC_BUILDING_LIBRARY)
#    define HC_API __declspec(dllexport)
#  else
#    define HC_API __declspec(dllimport)
#  endif
#else
#  define HC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hc_status {
  HC_OK = 0,
  HC_ERR_INVALID_ARGUMENT = 1,
  HC_ERR_FILE_NOT_FOUND = 2,
  HC_ERR_RAGGED_ROWS = 3,
  HC_ERR_NON_NUMERIC_CELL = 4,
  HC_ERR_DEGENERATE_ROW = 5,
  HC_ERR_INVALID_ORDER = 6,
  HC_ERR_DIMENSION_MISMATCH = 7,
  HC_ERR_EMPTY_COMMUNITY = 8,
  HC_ERR_RANGE = 9,
  HC_ERR_ISOLATED_VERTEX = 10,
  HC_ERR_NO_CONNECTED_ORDER = 11,
  HC_ERR_DISCONNECTED_LINE_GRAPH = 12,
  HC_ERR_EIGEN_FAILURE = 13,
  HC_ERR_IO = 14,
  HC_ERR_INTERNAL = 15
} hc_status;

/* Dense row-major matrix of doubles. */
typedef struct hc_matrix hc_matrix;
/* Hypergraph as a list of hyperedges over n nodes. */
typedef struct hc_hypergraph hc_hypergraph;
/* Overlapping community assignment. */
typedef struct hc_cover hc_cover;
/* Consistency scores with permutation statistics. */
typedef struct hc_report hc_report;
/* Pipeline configuration, created with the documented defaults. */
typedef struct hc_config hc_config;
/* Result of a group run. */
typedef struct hc_group hc_group;

HC_API const char* hc_version(void);
HC_API const char* hc_status_name(hc_status status);
/* Message of the last failed call on this thread; empty after success. */
HC_API const char* hc_last_error(void);
/* 0 for HC_OK, 1 for input errors, 2 for numerical failures. */
HC_API int hc_status_exit_code(hc_status status);
HC_API void hc_string_free(char* s);

/* Matrices. `data` may be NULL for a zero matrix. */
HC_API hc_status hc_matrix_create(int64_t rows, int64_t cols, const double* data, hc_matrix** out);
HC_API void hc_matrix_free(hc_matrix* m);
HC_API int64_t hc_matrix_rows(const hc_matrix* m);
HC_API int64_t hc_matrix_cols(const hc_matrix* m);
HC_API const double* hc_matrix_data(const hc_matrix* m);
HC_API hc_status hc_matrix_read_csv(const char* path, hc_matrix** out);
HC_API hc_status hc_matrix_write_csv(const hc_matrix* m, const char* path);

/* Time series (rows = ROIs). Format follows the extension (.tsv or csv). */
HC_API hc_status hc_load_time_series(const char* path, int transpose, hc_matrix** out);
HC_API hc_status hc_normalize_rows(const hc_matrix* series, hc_matrix** out);

/* Lasso weight matrix of every ROI regressed on the others; zero diagonal. */
HC_API hc_status hc_regress_all(const hc_matrix* normalized, double lambda, double tol, int64_t max_iter,
                                unsigned threads, hc_matrix** weights, int64_t* n_unconverged);

/* Hypergraphs. */
HC_API hc_status hc_build_hyperedges(const hc_matrix* scores, int64_t order, int positive_only, hc_hypergraph** out);
/* From a 0/1 node-by-hyperedge incidence matrix. */
HC_API hc_status hc_hypergraph_from_incidence(const hc_matrix* incidence, hc_hypergraph** out);
HC_API void hc_hypergraph_free(hc_hypergraph* h);
HC_API int64_t hc_hypergraph_n_nodes(const hc_hypergraph* h);
HC_API int64_t hc_hypergraph_n_edges(const hc_hypergraph* h);
HC_API int64_t hc_hypergraph_order(const hc_hypergraph* h);
HC_API hc_status hc_hypergraph_incidence(const hc_hypergraph* h, hc_matrix** out);
HC_API hc_status hc_line_graph(const hc_hypergraph* h, hc_matrix** out);
HC_API hc_status hc_is_connected(const hc_matrix* similarity, int* out);
HC_API hc_status hc_min_uniform_order(const hc_matrix* const* scores, size_t count, int64_t e_max, int positive_only,
                                      int64_t* out);

/* Spectral clustering of a line graph. */
HC_API hc_status hc_normalized_laplacian(const hc_matrix* similarity, hc_matrix** out);
/* Ascending eigenvalues as a column vector. */
HC_API hc_status hc_laplacian_eigenvalues(const hc_matrix* similarity, hc_matrix** out);
HC_API hc_status hc_eigengap_k(const double* eigenvalues, size_t n, int64_t k_min, int64_t k_max, int64_t* out);
/* labels must hold rows(points) entries. */
HC_API hc_status hc_kmeans(const hc_matrix* points, int64_t k, uint64_t seed, int64_t* labels, double* wcss);
/* k = 0 selects k by eigengap over [2, k_max]. labels must hold rows(similarity) entries. */
HC_API hc_status hc_spectral_clustering(const hc_matrix* similarity, int64_t k, int64_t k_max, uint64_t seed,
                                        int64_t* labels, int64_t* k_used);

/* Covers. */
HC_API hc_status hc_cluster_hypergraph(const hc_hypergraph* h, uint64_t seed, int64_t k_override, int64_t k_max,
                                       hc_cover** out);
HC_API hc_status hc_node_membership(const hc_hypergraph* h, const int64_t* edge_labels, int64_t k, hc_cover** out);
/* From a 0/1 node-by-community matrix. */
HC_API hc_status hc_cover_from_membership(const hc_matrix* membership, hc_cover** out);
HC_API hc_status hc_cover_read_json(const char* path, hc_cover** out);
HC_API hc_status hc_cover_write_json(const hc_cover* c, const char* path);
HC_API void hc_cover_free(hc_cover* c);
HC_API int64_t hc_cover_n_nodes(const hc_cover* c);
HC_API int64_t hc_cover_n_communities(const hc_cover* c);
HC_API int64_t hc_cover_community_size(const hc_cover* c, int64_t community);
/* Copies the sorted members of `community` into nodes (capacity >= its size). */
HC_API hc_status hc_cover_community(const hc_cover* c, int64_t community, int64_t* nodes);
HC_API hc_status hc_cover_membership(const hc_cover* c, hc_matrix** out);
HC_API hc_status hc_co_membership(const hc_cover* c, hc_matrix** out);
HC_API hc_status hc_overlapping_f1(const hc_cover* detected, const hc_cover* truth, double* out);

/* Group consensus. */
HC_API hc_status hc_association_matrix(const hc_matrix* const* comemberships, size_t count, hc_matrix** out);
HC_API hc_status hc_consensus(const hc_matrix* association, int64_t e_group, int auto_order, uint64_t seed,
                              hc_cover** out, int64_t* e_group_used);

/* Consistency scoring. */
HC_API hc_status hc_consistency_score(const hc_hypergraph* h, const int64_t* nodes, size_t n_nodes, double* out);
HC_API hc_status hc_permutation_test(const hc_hypergraph* const* hypergraphs, size_t count, const hc_cover* cover,
                                     int64_t n_perm, uint64_t seed, hc_report** out);
HC_API void hc_report_free(hc_report* r);
HC_API int64_t hc_report_n_communities(const hc_report* r);
HC_API int64_t hc_report_n_observations(const hc_report* r);
HC_API int64_t hc_report_community_size(const hc_report* r, int64_t community);
HC_API double hc_report_q(const hc_report* r, int64_t observation, int64_t community);
HC_API double hc_report_q_mean(const hc_report* r, int64_t community);
HC_API double hc_report_q_std(const hc_report* r, int64_t community);
HC_API double hc_report_q_random_mean(const hc_report* r, int64_t community);
HC_API double hc_report_q_random_std(const hc_report* r, int64_t community);
HC_API double hc_report_p_value(const hc_report* r, int64_t community);
HC_API double hc_report_z_score(const hc_report* r, int64_t community);
/* JSON text; release with hc_string_free. */
HC_API hc_status hc_report_json(const hc_report* r, char** out);

/* Synthetic cohorts with a planted chain of overlapping communities. */
typedef struct hc_synth_params {
  int64_t n_rois;
  int64_t n_timepoints;
  int64_t n_communities;
  int64_t overlap;
  double signal_strength;
  double noise_std;
  double ar;
  int64_t n_subjects;
  int64_t n_runs;
  uint64_t seed;
} hc_synth_params;

HC_API void hc_synth_params_default(hc_synth_params* p);
/* subject and run are 0-based. */
HC_API hc_status hc_synth_generate(const hc_synth_params* p, int64_t subject, int64_t run, hc_matrix** out);
HC_API hc_status hc_synth_planted(const hc_synth_params* p, hc_cover** out);
HC_API hc_status hc_synth_write(const hc_synth_params* p, const char* dir);

/* Pipeline. Keys are those of the manifest "config" block. */
HC_API hc_status hc_config_create(hc_config** out);
HC_API void hc_config_free(hc_config* cfg);
HC_API hc_status hc_config_set(hc_config* cfg, const char* key, const char* value);
HC_API hc_status hc_config_json(const hc_config* cfg, char** out);

HC_API hc_status hc_run_subject(const hc_config* cfg, const char* file, hc_cover** cover, int64_t* order);
HC_API hc_status hc_run_group(const hc_config* cfg, hc_group** out);
HC_API void hc_group_free(hc_group* g);
HC_API int64_t hc_group_n_subjects(const hc_group* g);
HC_API int64_t hc_group_e_subject(const hc_group* g);
HC_API int64_t hc_group_e_group(const hc_group* g);
/* Number of Lasso rows that hit max_iter, summed over subjects. */
HC_API int64_t hc_group_n_unconverged(const hc_group* g);
HC_API int64_t hc_group_n_skipped(const hc_group* g);
HC_API const char* hc_group_skipped(const hc_group* g, int64_t i);
/* Borrowed; valid until hc_group_free. */
HC_API const hc_cover* hc_group_cover(const hc_group* g);
HC_API const hc_report* hc_group_report(const hc_group* g);

HC_API hc_status hc_score_cover(const char* cover_json, const char* run_dir, int64_t n_perm, uint64_t seed,
                                hc_report** out);
/* kind: normalized, weights, incidence, line-graph, laplacian, eigenvalues. */
HC_API hc_status hc_export(const hc_config* cfg, const char* input, const char* kind, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif
