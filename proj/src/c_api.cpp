#include "hypercomm/hypercomm.h"

#include "hypercomm/community.hpp"
#include "hypercomm/consensus.hpp"
#include "hypercomm/csv.hpp"
#include "hypercomm/error.hpp"
#include "hypercomm/hypergraph.hpp"
#include "hypercomm/ingest.hpp"
#include "hypercomm/lasso.hpp"
#include "hypercomm/pipeline.hpp"
#include "hypercomm/scoring.hpp"
#include "hypercomm/serialize.hpp"
#include "hypercomm/spectral.hpp"
#include "hypercomm/synth.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

using namespace hypercomm;

struct hc_matrix {
  Matrix m;
};
struct hc_hypergraph {
  IncidenceMatrix h;
};
struct hc_cover {
  Cover c;
};
struct hc_report {
  ConsistencyReport r;
};
struct hc_config {
  PipelineConfig cfg;
};
struct hc_group {
  GroupResult g;
  hc_cover cover;
  hc_report report;
  Index n_unconverged = 0;
};

namespace {

thread_local std::string last_error;

template <class F>
hc_status guarded(F&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return HC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<hc_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return HC_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

template <class T>
void need(const T* p, const char* name) {
  if (p == nullptr) fail(ErrorCode::InvalidArgument, std::string(name) + " is null");
}

BinaryMatrix to_binary(const Matrix& m) {
  BinaryMatrix b(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v != 0.0 && v != 1.0) fail(ErrorCode::InvalidArgument, "expected a 0/1 matrix");
      b(i, j) = static_cast<std::uint8_t>(v);
    }
  return b;
}

hc_matrix* wrap(Matrix m) { return new hc_matrix{std::move(m)}; }

LineGraph as_line_graph(const hc_matrix* sim) {
  need(sim, "similarity");
  if (sim->m.rows() != sim->m.cols()) fail(ErrorCode::DimensionMismatch, "similarity matrix must be square");
  return LineGraph{sim->m};
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SyntheticSpec to_spec(const hc_synth_params* p) {
  need(p, "params");
  SyntheticSpec spec;
  spec.n_rois = p->n_rois;
  spec.n_timepoints = p->n_timepoints;
  spec.planted = chain_cover(p->n_rois, p->n_communities, p->overlap);
  spec.signal_strength = p->signal_strength;
  spec.noise_std = p->noise_std;
  spec.ar = p->ar;
  spec.n_subjects = p->n_subjects;
  spec.n_runs = p->n_runs;
  spec.seed = p->seed;
  validate(spec);
  return spec;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool in_range(Index i, Index n) { return i >= 0 && i < n; }

}  // namespace

extern "C" {

const char* hc_version(void) { return "1.0.0"; }

const char* hc_status_name(hc_status status) {
  if (status == HC_OK) return "ok";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* hc_last_error(void) { return last_error.c_str(); }

int hc_status_exit_code(hc_status status) {
  if (status == HC_OK) return 0;
  return is_input_error(static_cast<ErrorCode>(status)) ? 1 : 2;
}

void hc_string_free(char* s) { delete[] s; }

hc_status hc_matrix_create(int64_t rows, int64_t cols, const double* data, hc_matrix** out) {
  return guarded([&] {
    need(out, "out");
    require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
    Matrix m = Matrix::Zero(rows, cols);
    if (data != nullptr) m = Eigen::Map<const Matrix>(data, rows, cols);
    *out = wrap(std::move(m));
  });
}

void hc_matrix_free(hc_matrix* m) { delete m; }
int64_t hc_matrix_rows(const hc_matrix* m) { return m ? m->m.rows() : 0; }
int64_t hc_matrix_cols(const hc_matrix* m) { return m ? m->m.cols() : 0; }
const double* hc_matrix_data(const hc_matrix* m) { return m ? m->m.data() : nullptr; }

hc_status hc_matrix_read_csv(const char* path, hc_matrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(read_matrix_csv(path));
  });
}

hc_status hc_matrix_write_csv(const hc_matrix* m, const char* path) {
  return guarded([&] {
    need(m, "matrix");
    need(path, "path");
    write_matrix_csv(path, m->m);
  });
}

hc_status hc_load_time_series(const char* path, int transpose, hc_matrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(load_time_series(path, format_from_extension(path), transpose != 0).data);
  });
}

hc_status hc_normalize_rows(const hc_matrix* series, hc_matrix** out) {
  return guarded([&] {
    need(series, "series");
    need(out, "out");
    *out = wrap(normalize_rows(series->m));
  });
}

hc_status hc_regress_all(const hc_matrix* normalized, double lambda, double tol, int64_t max_iter, unsigned threads,
                         hc_matrix** weights, int64_t* n_unconverged) {
  return guarded([&] {
    need(normalized, "normalized");
    need(weights, "weights");
    require(max_iter >= 1, "max_iter must be at least 1");
    LassoOptions opts;
    opts.lambda = lambda;
    opts.tol = tol;
    opts.max_iter = static_cast<std::size_t>(max_iter);
    auto w = regress_all(normalized->m, opts, threads == 0 ? 1 : threads);
    if (n_unconverged) *n_unconverged = w.n_unconverged();
    *weights = wrap(std::move(w.weights));
  });
}

hc_status hc_build_hyperedges(const hc_matrix* scores, int64_t order, int positive_only, hc_hypergraph** out) {
  return guarded([&] {
    need(scores, "scores");
    need(out, "out");
    *out = new hc_hypergraph{build_hyperedges(scores->m, order, positive_only != 0)};
  });
}

hc_status hc_hypergraph_from_incidence(const hc_matrix* incidence, hc_hypergraph** out) {
  return guarded([&] {
    need(incidence, "incidence");
    need(out, "out");
    *out = new hc_hypergraph{IncidenceMatrix::from_dense(to_binary(incidence->m))};
  });
}

void hc_hypergraph_free(hc_hypergraph* h) { delete h; }
int64_t hc_hypergraph_n_nodes(const hc_hypergraph* h) { return h ? h->h.n_nodes : 0; }
int64_t hc_hypergraph_n_edges(const hc_hypergraph* h) { return h ? h->h.n_edges() : 0; }
int64_t hc_hypergraph_order(const hc_hypergraph* h) { return h ? h->h.order : 0; }

hc_status hc_hypergraph_incidence(const hc_hypergraph* h, hc_matrix** out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    *out = wrap(h->h.dense().cast<double>());
  });
}

hc_status hc_line_graph(const hc_hypergraph* h, hc_matrix** out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    *out = wrap(line_graph(h->h).similarity);
  });
}

hc_status hc_is_connected(const hc_matrix* similarity, int* out) {
  return guarded([&] {
    need(out, "out");
    *out = is_connected(as_line_graph(similarity)) ? 1 : 0;
  });
}

hc_status hc_min_uniform_order(const hc_matrix* const* scores, size_t count, int64_t e_max, int positive_only,
                               int64_t* out) {
  return guarded([&] {
    need(out, "out");
    require(count == 0 || scores != nullptr, "scores is null");
    std::vector<Matrix> ms;
    for (size_t i = 0; i < count; ++i) {
      need(scores[i], "score matrix");
      ms.push_back(scores[i]->m);
    }
    *out = min_uniform_order(std::span<const Matrix>(ms), e_max, positive_only != 0);
  });
}

hc_status hc_normalized_laplacian(const hc_matrix* similarity, hc_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(normalized_laplacian(as_line_graph(similarity)));
  });
}

hc_status hc_laplacian_eigenvalues(const hc_matrix* similarity, hc_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(laplacian_spectrum(as_line_graph(similarity)).eigenvalues);
  });
}

hc_status hc_eigengap_k(const double* eigenvalues, size_t n, int64_t k_min, int64_t k_max, int64_t* out) {
  return guarded([&] {
    need(out, "out");
    require(n == 0 || eigenvalues != nullptr, "eigenvalues is null");
    const Vector ev = Eigen::Map<const Vector>(eigenvalues, static_cast<Index>(n));
    *out = eigengap_k(ev, k_min, k_max);
  });
}

hc_status hc_kmeans(const hc_matrix* points, int64_t k, uint64_t seed, int64_t* labels, double* wcss) {
  return guarded([&] {
    need(points, "points");
    need(labels, "labels");
    const auto res = kmeans(points->m, k, seed);
    std::copy(res.labels.begin(), res.labels.end(), labels);
    if (wcss) *wcss = res.wcss;
  });
}

hc_status hc_spectral_clustering(const hc_matrix* similarity, int64_t k, int64_t k_max, uint64_t seed,
                                 int64_t* labels, int64_t* k_used) {
  return guarded([&] {
    need(labels, "labels");
    require(k >= 0, "k must be nonnegative");
    const auto spectrum = laplacian_spectrum(as_line_graph(similarity));
    const Index n = spectrum.eigenvalues.size();
    if (k == 0) {
      const Index hi = std::min<Index>(k_max, n - 1);
      k = hi >= 2 ? eigengap_k(spectrum.eigenvalues, 2, hi) : 1;
    }
    const auto res = spectral_clustering(spectrum, k, seed);
    std::copy(res.labels.begin(), res.labels.end(), labels);
    if (k_used) *k_used = res.n_communities;
  });
}

hc_status hc_cluster_hypergraph(const hc_hypergraph* h, uint64_t seed, int64_t k_override, int64_t k_max,
                                hc_cover** out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    ClusteringOptions opts;
    opts.k_override = k_override;
    opts.k_max = k_max;
    *out = new hc_cover{cluster_hypergraph(h->h, seed, opts).cover};
  });
}

hc_status hc_node_membership(const hc_hypergraph* h, const int64_t* edge_labels, int64_t k, hc_cover** out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    const auto n = static_cast<size_t>(h->h.n_edges());
    require(n == 0 || edge_labels != nullptr, "edge_labels is null");
    std::vector<Index> labels(edge_labels, edge_labels + n);
    *out = new hc_cover{node_membership(h->h, labels, k)};
  });
}

hc_status hc_cover_from_membership(const hc_matrix* membership, hc_cover** out) {
  return guarded([&] {
    need(membership, "membership");
    need(out, "out");
    const BinaryMatrix y = to_binary(membership->m);
    std::vector<std::vector<Index>> sets(static_cast<size_t>(y.cols()));
    for (Index c = 0; c < y.cols(); ++c)
      for (Index i = 0; i < y.rows(); ++i)
        if (y(i, c)) sets[static_cast<size_t>(c)].push_back(i);
    *out = new hc_cover{Cover::from_communities(y.rows(), sets)};
  });
}

hc_status hc_cover_read_json(const char* path, hc_cover** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new hc_cover{read_cover(path)};
  });
}

hc_status hc_cover_write_json(const hc_cover* c, const char* path) {
  return guarded([&] {
    need(c, "cover");
    need(path, "path");
    write_cover(path, c->c);
  });
}

void hc_cover_free(hc_cover* c) { delete c; }
int64_t hc_cover_n_nodes(const hc_cover* c) { return c ? c->c.n_nodes() : 0; }
int64_t hc_cover_n_communities(const hc_cover* c) { return c ? c->c.n_communities() : 0; }

int64_t hc_cover_community_size(const hc_cover* c, int64_t community) {
  if (!c || !in_range(community, c->c.n_communities())) return -1;
  return c->c.community_sizes[static_cast<size_t>(community)];
}

hc_status hc_cover_community(const hc_cover* c, int64_t community, int64_t* nodes) {
  return guarded([&] {
    need(c, "cover");
    need(nodes, "nodes");
    if (!in_range(community, c->c.n_communities())) fail(ErrorCode::Range, "community index out of range");
    Index n = 0;
    for (Index i = 0; i < c->c.n_nodes(); ++i)
      if (c->c.membership(i, community)) nodes[n++] = i;
  });
}

hc_status hc_cover_membership(const hc_cover* c, hc_matrix** out) {
  return guarded([&] {
    need(c, "cover");
    need(out, "out");
    *out = wrap(c->c.membership.cast<double>());
  });
}

hc_status hc_co_membership(const hc_cover* c, hc_matrix** out) {
  return guarded([&] {
    need(c, "cover");
    need(out, "out");
    *out = wrap(co_membership(c->c).matrix.cast<double>());
  });
}

hc_status hc_overlapping_f1(const hc_cover* detected, const hc_cover* truth, double* out) {
  return guarded([&] {
    need(detected, "detected");
    need(truth, "truth");
    need(out, "out");
    *out = overlapping_f1(detected->c.communities(), truth->c.communities());
  });
}

hc_status hc_association_matrix(const hc_matrix* const* comemberships, size_t count, hc_matrix** out) {
  return guarded([&] {
    need(out, "out");
    require(count == 0 || comemberships != nullptr, "comemberships is null");
    std::vector<CoMembershipMatrix> ms;
    for (size_t i = 0; i < count; ++i) {
      need(comemberships[i], "co-membership matrix");
      ms.push_back(CoMembershipMatrix{to_binary(comemberships[i]->m)});
    }
    *out = wrap(association_matrix(ms).matrix);
  });
}

hc_status hc_consensus(const hc_matrix* association, int64_t e_group, int auto_order, uint64_t seed, hc_cover** out,
                       int64_t* e_group_used) {
  return guarded([&] {
    need(association, "association");
    need(out, "out");
    AssociationMatrix a{association->m, 0, 0, 0};
    ConsensusOptions opts;
    opts.e_group = e_group;
    opts.auto_order = auto_order != 0;
    auto res = consensus_communities(a, seed, opts);
    if (e_group_used) *e_group_used = res.e_group;
    *out = new hc_cover{std::move(res.communities.cover)};
  });
}

hc_status hc_consistency_score(const hc_hypergraph* h, const int64_t* nodes, size_t n_nodes, double* out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    require(n_nodes == 0 || nodes != nullptr, "nodes is null");
    const std::vector<Index> community(nodes, nodes + n_nodes);
    *out = consistency_score(h->h, community);
  });
}

hc_status hc_permutation_test(const hc_hypergraph* const* hypergraphs, size_t count, const hc_cover* cover,
                              int64_t n_perm, uint64_t seed, hc_report** out) {
  return guarded([&] {
    need(cover, "cover");
    need(out, "out");
    require(count == 0 || hypergraphs != nullptr, "hypergraphs is null");
    std::vector<IncidenceMatrix> hs;
    for (size_t i = 0; i < count; ++i) {
      need(hypergraphs[i], "hypergraph");
      hs.push_back(hypergraphs[i]->h);
    }
    *out = new hc_report{permutation_pvalue(hs, cover->c, n_perm, seed)};
  });
}

void hc_report_free(hc_report* r) { delete r; }
int64_t hc_report_n_communities(const hc_report* r) { return r ? r->r.q.cols() : 0; }
int64_t hc_report_n_observations(const hc_report* r) { return r ? r->r.q.rows() : 0; }

int64_t hc_report_community_size(const hc_report* r, int64_t community) {
  if (!r || !in_range(community, r->r.q.cols())) return -1;
  return r->r.community_sizes[static_cast<size_t>(community)];
}

double hc_report_q(const hc_report* r, int64_t observation, int64_t community) {
  if (!r || !in_range(observation, r->r.q.rows()) || !in_range(community, r->r.q.cols())) return kNaN;
  return r->r.q(observation, community);
}

#define HC_REPORT_FIELD(name, field)                                          \
  double hc_report_##name(const hc_report* r, int64_t community) {            \
    if (!r || !in_range(community, r->r.field.size())) return kNaN;           \
    return r->r.field(community);                                             \
  }

HC_REPORT_FIELD(q_mean, q_mean)
HC_REPORT_FIELD(q_std, q_std)
HC_REPORT_FIELD(q_random_mean, q_random_mean)
HC_REPORT_FIELD(q_random_std, q_random_std)
HC_REPORT_FIELD(p_value, p_values)
HC_REPORT_FIELD(z_score, z_scores)

#undef HC_REPORT_FIELD

hc_status hc_report_json(const hc_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = copy_string(dump_json(report_to_json(r->r)));
  });
}

void hc_synth_params_default(hc_synth_params* p) {
  if (!p) return;
  const SyntheticSpec d;
  p->n_rois = d.n_rois;
  p->n_timepoints = d.n_timepoints;
  p->n_communities = 4;
  p->overlap = 2;
  p->signal_strength = d.signal_strength;
  p->noise_std = d.noise_std;
  p->ar = d.ar;
  p->n_subjects = d.n_subjects;
  p->n_runs = d.n_runs;
  p->seed = d.seed;
}

hc_status hc_synth_generate(const hc_synth_params* p, int64_t subject, int64_t run, hc_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(generate_subject(to_spec(p), subject, run).data);
  });
}

hc_status hc_synth_planted(const hc_synth_params* p, hc_cover** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hc_cover{to_spec(p).planted};
  });
}

hc_status hc_synth_write(const hc_synth_params* p, const char* dir) {
  return guarded([&] {
    need(dir, "dir");
    write_synthetic_cohort(to_spec(p), dir);
  });
}

hc_status hc_config_create(hc_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hc_config{};
  });
}

void hc_config_free(hc_config* cfg) { delete cfg; }

hc_status hc_config_set(hc_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    set_config_value(cfg->cfg, key, value);
  });
}

hc_status hc_config_json(const hc_config* cfg, char** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    *out = copy_string(dump_json(config_to_json(cfg->cfg)));
  });
}

hc_status hc_run_subject(const hc_config* cfg, const char* file, hc_cover** cover, int64_t* order) {
  return guarded([&] {
    need(cfg, "config");
    need(file, "file");
    auto art = run_subject(cfg->cfg, file);
    if (order) *order = art.order;
    if (cover) *cover = new hc_cover{std::move(art.cover)};
  });
}

hc_status hc_run_group(const hc_config* cfg, hc_group** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    auto* g = new hc_group{run_group(cfg->cfg), {}, {}, 0};
    g->cover.c = g->g.consensus.communities.cover;
    g->report.r = g->g.report;
    for (const auto& s : g->g.subjects) g->n_unconverged += s.weights.n_unconverged();
    *out = g;
  });
}

void hc_group_free(hc_group* g) { delete g; }
int64_t hc_group_n_subjects(const hc_group* g) { return g ? static_cast<int64_t>(g->g.subjects.size()) : 0; }
int64_t hc_group_e_subject(const hc_group* g) { return g ? g->g.e_subject : 0; }
int64_t hc_group_e_group(const hc_group* g) { return g ? g->g.consensus.e_group : 0; }
int64_t hc_group_n_unconverged(const hc_group* g) { return g ? g->n_unconverged : 0; }
int64_t hc_group_n_skipped(const hc_group* g) { return g ? static_cast<int64_t>(g->g.skipped.size()) : 0; }

const char* hc_group_skipped(const hc_group* g, int64_t i) {
  if (!g || !in_range(i, static_cast<Index>(g->g.skipped.size()))) return nullptr;
  return g->g.skipped[static_cast<size_t>(i)].c_str();
}

const hc_cover* hc_group_cover(const hc_group* g) { return g ? &g->cover : nullptr; }
const hc_report* hc_group_report(const hc_group* g) { return g ? &g->report : nullptr; }

hc_status hc_score_cover(const char* cover_json, const char* run_dir, int64_t n_perm, uint64_t seed,
                         hc_report** out) {
  return guarded([&] {
    need(cover_json, "cover_json");
    need(run_dir, "run_dir");
    need(out, "out");
    *out = new hc_report{score_cover(cover_json, run_dir, n_perm, seed)};
  });
}

hc_status hc_export(const hc_config* cfg, const char* input, const char* kind, const char* out_path) {
  return guarded([&] {
    need(cfg, "config");
    need(input, "input");
    need(kind, "kind");
    need(out_path, "out_path");
    export_matrix(cfg->cfg, input, parse_export_kind(kind), out_path);
  });
}

}  // extern "C"
