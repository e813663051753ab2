#include "hypercomm/pipeline.hpp"

#include "hypercomm/csv.hpp"
#include "hypercomm/error.hpp"
#include "hypercomm/ingest.hpp"
#include "hypercomm/seed.hpp"
#include "hypercomm/serialize.hpp"
#include "hypercomm/spectral.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <functional>
#include <set>
#include <thread>

namespace hypercomm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolName = "hypercomm";
constexpr const char* kToolVersion = "1.0.0";

template <class T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(value.data(), last, out);
  if (res.ec != std::errc() || res.ptr != last)
    fail(ErrorCode::InvalidArgument, "invalid integer for " + key + ": '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(value.data(), last, out);
  if (res.ec != std::errc() || res.ptr != last)
    fail(ErrorCode::InvalidArgument, "invalid number for " + key + ": '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  fail(ErrorCode::InvalidArgument, "invalid boolean for " + key + ": '" + value + "'");
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// failure by index so errors are reported deterministically.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) guarded(i);
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool id_less(const std::string& a, const std::string& b) {
  long long x = 0, y = 0;
  const auto ra = std::from_chars(a.data(), a.data() + a.size(), x);
  const auto rb = std::from_chars(b.data(), b.data() + b.size(), y);
  const bool na = ra.ec == std::errc() && ra.ptr == a.data() + a.size();
  const bool nb = rb.ec == std::errc() && rb.ptr == b.data() + b.size();
  if (na && nb && x != y) return x < y;
  return a < b;
}

struct Entry {
  fs::path file;
  std::string stem;
  std::string subject_id;
  std::string run_id;
};

Entry make_entry(const fs::path& file) {
  Entry e{file, file.stem().string(), {}, {}};
  if (!parse_subject_run(e.stem, e.subject_id, e.run_id)) e.subject_id = e.stem;
  return e;
}

void sort_entries(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.subject_id != b.subject_id) return id_less(a.subject_id, b.subject_id);
    if (a.run_id != b.run_id) return id_less(a.run_id, b.run_id);
    return a.stem < b.stem;
  });
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json weights_key(const PipelineConfig& cfg, const std::string& source_text) {
  return json{{"source_fnv1a", hex64(fnv1a(source_text))},
              {"source_bytes", source_text.size()},
              {"transpose", cfg.transpose},
              {"lambda", cfg.lambda},
              {"tol", cfg.tol},
              {"max_iter", cfg.max_iter}};
}

json cluster_key(const PipelineConfig& cfg, const json& wkey, Index order, std::uint64_t seed) {
  return json{{"weights", wkey},
              {"order", order},
              {"positive_only", cfg.positive_only},
              {"k_override", cfg.k_override},
              {"k_max", cfg.k_max},
              {"seed", seed},
              {"kmeans_n_init", cfg.kmeans_n_init},
              {"kmeans_max_iter", cfg.kmeans_max_iter}};
}

ClusteringOptions clustering_options(const PipelineConfig& cfg) {
  ClusteringOptions opts;
  opts.k_override = cfg.k_override;
  opts.k_max = cfg.k_max;
  opts.kmeans.n_init = cfg.kmeans_n_init;
  opts.kmeans.max_iter = cfg.kmeans_max_iter;
  return opts;
}

json read_json_if_exists(const fs::path& path) {
  if (!fs::exists(path)) return json();
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception&) {
    return json();
  }
}

Matrix labels_to_matrix(const std::vector<Index>& labels) {
  Matrix m(static_cast<Index>(labels.size()), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) m(static_cast<Index>(i), 0) = static_cast<double>(labels[i]);
  return m;
}

// Per-subject state while a run is in progress.
struct Work {
  Entry entry;
  std::string source_text;
  json wkey;
  json ckey;
  json cached;
  SubjectArtifacts art;
};

fs::path subject_dir(const PipelineConfig& cfg, const std::string& stem) {
  return fs::path(cfg.output_dir) / "subjects" / stem;
}

void compute_weights(const PipelineConfig& cfg, Work& w, unsigned lasso_threads) {
  w.source_text = read_text_file(w.entry.file);
  w.wkey = weights_key(cfg, w.source_text);
  w.art.stem = w.entry.stem;
  w.art.subject_id = w.entry.subject_id;
  w.art.run_id = w.entry.run_id;
  w.art.source = w.entry.file;
  w.art.seed = subject_seed(cfg.seed, w.entry.subject_id, w.entry.run_id);

  const auto dir = subject_dir(cfg, w.entry.stem);
  if (!cfg.output_dir.empty()) {
    w.cached = read_json_if_exists(dir / "subject.json");
    if (w.cached.is_object() && w.cached.value("weights_key", json()) == w.wkey && fs::exists(dir / "weights.csv")) {
      w.art.weights.weights = read_matrix_csv(dir / "weights.csv");
      w.art.weights.lambda = cfg.lambda;
      const auto n = static_cast<std::size_t>(w.art.weights.weights.rows());
      w.art.weights.sweeps = w.cached.value("lasso_sweeps", std::vector<std::size_t>(n, 0));
      w.art.weights.kkt = w.cached.value("lasso_kkt", std::vector<double>(n, 0.0));
      w.art.weights.converged = w.cached.value("lasso_converged", std::vector<bool>(n, true));
      w.art.weights_cached = true;
      return;
    }
  }
  const auto format = format_from_extension(w.entry.file);
  const auto raw = load_time_series(w.entry.file, format, cfg.transpose);
  const auto normalized = normalize_rows(raw.data);
  LassoOptions lopts;
  lopts.lambda = cfg.lambda;
  lopts.tol = cfg.tol;
  lopts.max_iter = cfg.max_iter;
  w.art.weights = regress_all(normalized, lopts, lasso_threads);
  if (!cfg.output_dir.empty()) write_matrix_csv(dir / "weights.csv", w.art.weights.weights);
}

void compute_clustering(const PipelineConfig& cfg, Work& w, Index order) {
  w.art.order = order;
  w.ckey = cluster_key(cfg, w.wkey, order, w.art.seed);
  const auto dir = subject_dir(cfg, w.entry.stem);
  if (!cfg.output_dir.empty() && w.cached.is_object() && w.cached.value("cluster_key", json()) == w.ckey) {
    try {
      w.art.hypergraph = IncidenceMatrix::from_dense(read_matrix_csv(dir / "incidence.csv").cast<std::uint8_t>());
      w.art.hypergraph.order = order;
      w.art.comembership.matrix = read_matrix_csv(dir / "comembership.csv").cast<std::uint8_t>();
      w.art.cover = read_cover(dir / "cover.json");
      w.art.eigenvalues = read_matrix_csv(dir / "eigenvalues.csv").col(0);
      const Matrix labels = read_matrix_csv(dir / "edge_labels.csv");
      w.art.edge_labels.clear();
      for (Index i = 0; i < labels.rows(); ++i) w.art.edge_labels.push_back(static_cast<Index>(labels(i, 0)));
      w.art.clustering_cached = true;
      return;
    } catch (const Error&) {
      // incomplete cache: recompute below
    }
  }
  w.art.hypergraph = build_hyperedges(w.art.weights, order, cfg.positive_only);
  auto communities = cluster_hypergraph(w.art.hypergraph, w.art.seed, clustering_options(cfg));
  w.art.eigenvalues = communities.spectral.eigenvalues;
  w.art.edge_labels = communities.spectral.labels;
  w.art.cover = std::move(communities.cover);
  w.art.comembership = co_membership(w.art.cover);
  w.art.clustering_cached = false;

  if (cfg.output_dir.empty()) return;
  write_matrix_csv(dir / "incidence.csv", w.art.hypergraph.dense());
  write_matrix_csv(dir / "comembership.csv", w.art.comembership.matrix);
  write_matrix_csv(dir / "eigenvalues.csv", Matrix(w.art.eigenvalues));
  write_matrix_csv(dir / "edge_labels.csv", labels_to_matrix(w.art.edge_labels));
  write_cover(dir / "cover.json", w.art.cover);
  json meta{{"subject_id", w.art.subject_id},
            {"run_id", w.art.run_id},
            {"source", w.entry.file.filename().string()},
            {"seed", w.art.seed},
            {"order", order},
            {"n_communities", w.art.cover.n_communities()},
            {"community_sizes", w.art.cover.community_sizes},
            {"lasso_unconverged_rows", w.art.weights.n_unconverged()},
            {"lasso_sweeps", w.art.weights.sweeps},
            {"lasso_kkt", w.art.weights.kkt},
            {"lasso_converged", w.art.weights.converged},
            {"weights_key", w.wkey},
            {"cluster_key", w.ckey}};
  write_text_file(dir / "subject.json", dump_json(meta));
}

Index resolve_order(const PipelineConfig& cfg, const std::vector<Work>& work) {
  if (cfg.e_subject > 0) return cfg.e_subject;
  std::vector<Matrix> scores;
  for (const auto& w : work) scores.push_back(w.art.weights.weights);
  const Index n = scores.front().rows();
  const Index e_max = cfg.e_max > 0 ? std::min(cfg.e_max, n) : n;
  return min_uniform_order(std::span<const Matrix>(scores), e_max, cfg.positive_only);
}

[[noreturn]] void rethrow_with_context(const Entry& e, const Error& err) {
  fail(err.code(), e.stem + ": " + err.what());
}

}  // namespace

std::uint64_t subject_seed(std::uint64_t master, const std::string& subject_id, const std::string& run_id) {
  return derive_seed(master, "subject/" + subject_id + "/run/" + run_id);
}

json config_to_json(const PipelineConfig& cfg) {
  return json{{"lambda", cfg.lambda},
              {"tol", cfg.tol},
              {"max_iter", cfg.max_iter},
              {"e_subject", cfg.e_subject > 0 ? json(cfg.e_subject) : json("auto")},
              {"e_max", cfg.e_max},
              {"e_group", cfg.e_group},
              {"auto_group_order", cfg.auto_group_order},
              {"k_override", cfg.k_override},
              {"k_max", cfg.k_max},
              {"seed", cfg.seed},
              {"n_perm", cfg.n_perm},
              {"kmeans_n_init", cfg.kmeans_n_init},
              {"kmeans_max_iter", cfg.kmeans_max_iter},
              {"positive_only", cfg.positive_only},
              {"transpose", cfg.transpose},
              {"skip_failures", cfg.skip_failures},
              {"input_glob", cfg.input_glob},
              {"output_dir", cfg.output_dir}};
}

void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "lambda")
    cfg.lambda = parse_real(key, value);
  else if (key == "tol")
    cfg.tol = parse_real(key, value);
  else if (key == "max_iter")
    cfg.max_iter = parse_integer<std::size_t>(key, value);
  else if (key == "e_subject")
    cfg.e_subject = value == "auto" ? 0 : parse_integer<Index>(key, value);
  else if (key == "e_max")
    cfg.e_max = parse_integer<Index>(key, value);
  else if (key == "e_group")
    cfg.e_group = parse_integer<Index>(key, value);
  else if (key == "auto_group_order")
    cfg.auto_group_order = parse_bool(key, value);
  else if (key == "k_override" || key == "k")
    cfg.k_override = parse_integer<Index>(key, value);
  else if (key == "k_max")
    cfg.k_max = parse_integer<Index>(key, value);
  else if (key == "seed")
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "n_perm")
    cfg.n_perm = parse_integer<Index>(key, value);
  else if (key == "kmeans_n_init")
    cfg.kmeans_n_init = parse_integer<Index>(key, value);
  else if (key == "kmeans_max_iter")
    cfg.kmeans_max_iter = parse_integer<Index>(key, value);
  else if (key == "positive_only")
    cfg.positive_only = parse_bool(key, value);
  else if (key == "transpose")
    cfg.transpose = parse_bool(key, value);
  else if (key == "skip_failures")
    cfg.skip_failures = parse_bool(key, value);
  else if (key == "threads")
    cfg.threads = parse_integer<unsigned>(key, value);
  else if (key == "input_glob")
    cfg.input_glob = value;
  else if (key == "output_dir")
    cfg.output_dir = value;
  else
    fail(ErrorCode::InvalidArgument, "unknown configuration key '" + key + "'");
}

void validate(const PipelineConfig& cfg) {
  if (!(cfg.lambda > 0.0)) fail(ErrorCode::InvalidArgument, "lambda must be positive");
  if (!(cfg.tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  if (cfg.max_iter < 1) fail(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  if (cfg.e_subject != 0 && cfg.e_subject < 2) fail(ErrorCode::InvalidOrder, "e_subject must be >= 2 or auto");
  if (cfg.e_max < 0) fail(ErrorCode::InvalidArgument, "e_max must be nonnegative");
  if (cfg.e_group < 2) fail(ErrorCode::InvalidOrder, "e_group must be >= 2");
  if (cfg.k_override < 0) fail(ErrorCode::InvalidArgument, "k must be nonnegative");
  if (cfg.k_max < 2) fail(ErrorCode::InvalidArgument, "k_max must be >= 2");
  if (cfg.n_perm < 1) fail(ErrorCode::InvalidArgument, "n_perm must be >= 1");
  if (cfg.kmeans_n_init < 1 || cfg.kmeans_max_iter < 1)
    fail(ErrorCode::InvalidArgument, "k-means restarts and iterations must be >= 1");
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  const fs::path p(pattern);
  if (fs::is_directory(p)) return expand_glob((p / "*.csv").string());
  const auto name = p.filename().string();
  if (name.find_first_of("*?[") == std::string::npos) {
    if (!fs::exists(p)) fail(ErrorCode::FileNotFound, "no such file: " + pattern);
    return {p};
  }
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  if (!fs::is_directory(dir)) fail(ErrorCode::FileNotFound, "no such directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (!de.is_regular_file()) continue;
    const auto fname = de.path().filename().string();
    if (fnmatch(name.c_str(), fname.c_str(), 0) == 0) out.push_back(de.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) fail(ErrorCode::FileNotFound, "no files match " + pattern);
  return out;
}

SubjectArtifacts run_subject(const PipelineConfig& cfg, const fs::path& file) {
  validate(cfg);
  Work w;
  w.entry = make_entry(file);
  try {
    compute_weights(cfg, w, cfg.threads);
    const Index order = cfg.e_subject > 0 ? cfg.e_subject : [&] {
      const Matrix scores[] = {w.art.weights.weights};
      const Index n = scores[0].rows();
      return min_uniform_order(std::span<const Matrix>(scores), cfg.e_max > 0 ? std::min(cfg.e_max, n) : n,
                               cfg.positive_only);
    }();
    compute_clustering(cfg, w, order);
  } catch (const Error& e) {
    rethrow_with_context(w.entry, e);
  }
  if (!cfg.output_dir.empty()) {
    json manifest{{"tool", kToolName},
                  {"version", kToolVersion},
                  {"command", "subject"},
                  {"config", config_to_json(cfg)},
                  {"input", file.filename().string()},
                  {"subject_seed", w.art.seed},
                  {"e_subject", w.art.order},
                  {"n_communities", w.art.cover.n_communities()}};
    write_text_file(fs::path(cfg.output_dir) / "manifest.json", dump_json(manifest));
  }
  return std::move(w.art);
}

GroupResult run_group(const PipelineConfig& cfg) {
  validate(cfg);
  if (cfg.input_glob.empty()) fail(ErrorCode::InvalidArgument, "no input files given");
  std::vector<Work> work;
  {
    std::vector<Entry> entries;
    for (const auto& f : expand_glob(cfg.input_glob)) entries.push_back(make_entry(f));
    sort_entries(entries);
    for (auto& e : entries) work.push_back(Work{std::move(e), {}, {}, {}, {}, {}});
  }

  GroupResult result;
  const unsigned lasso_threads = work.size() >= 2 ? 1u : cfg.threads;
  std::vector<std::string> failures(work.size());
  parallel_for(work.size(), cfg.threads, [&](std::size_t i) {
    try {
      compute_weights(cfg, work[i], lasso_threads);
    } catch (const Error& e) {
      if (!cfg.skip_failures) rethrow_with_context(work[i].entry, e);
      failures[i] = work[i].entry.stem + ": " + e.what();
    }
  });
  auto drop_failed = [&] {
    std::vector<Work> kept;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (failures[i].empty())
        kept.push_back(std::move(work[i]));
      else
        result.skipped.push_back(failures[i]);
    }
    work = std::move(kept);
    failures.assign(work.size(), {});
    if (work.empty()) fail(ErrorCode::InvalidArgument, "every subject failed");
  };
  drop_failed();

  result.e_subject = resolve_order(cfg, work);
  parallel_for(work.size(), cfg.threads, [&](std::size_t i) {
    try {
      compute_clustering(cfg, work[i], result.e_subject);
    } catch (const Error& e) {
      if (!cfg.skip_failures) rethrow_with_context(work[i].entry, e);
      failures[i] = work[i].entry.stem + ": " + e.what();
    }
  });
  drop_failed();

  std::vector<CoMembershipMatrix> ms;
  std::vector<IncidenceMatrix> hs;
  std::vector<std::string> ids;
  std::set<std::string> subjects, runs;
  for (auto& w : work) {
    ms.push_back(w.art.comembership);
    hs.push_back(w.art.hypergraph);
    ids.push_back(w.art.stem);
    subjects.insert(w.art.subject_id);
    runs.insert(w.art.run_id);
    result.subjects.push_back(std::move(w.art));
  }
  result.association = association_matrix(ms);
  result.association.n_subjects = static_cast<Index>(subjects.size());
  result.association.n_runs = static_cast<Index>(runs.size());

  ConsensusOptions copts;
  copts.e_group = cfg.e_group;
  copts.auto_order = cfg.auto_group_order;
  copts.clustering = clustering_options(cfg);
  const auto consensus_seed = derive_seed(cfg.seed, "consensus");
  const auto permutation_seed = derive_seed(cfg.seed, "permutation");
  result.consensus = consensus_communities(result.association, consensus_seed, copts);
  result.report = permutation_pvalue(hs, result.consensus.communities.cover, cfg.n_perm, permutation_seed, ids);

  if (!cfg.output_dir.empty()) {
    const fs::path out(cfg.output_dir);
    write_matrix_csv(out / "association.csv", result.association.matrix);
    write_matrix_csv(out / "group_incidence.csv", result.consensus.hypergraph.dense());
    write_matrix_csv(out / "group_eigenvalues.csv", Matrix(result.consensus.communities.spectral.eigenvalues));
    write_cover(out / "consensus_cover.json", result.consensus.communities.cover);
    write_text_file(out / "consistency_report.json", dump_json(report_to_json(result.report)));
    write_text_file(out / "consistency_report.csv", report_to_csv(result.report));
    json manifest{{"tool", kToolName},
                  {"version", kToolVersion},
                  {"command", "group"},
                  {"config", config_to_json(cfg)},
                  {"e_subject", result.e_subject},
                  {"e_group", result.consensus.e_group},
                  {"n_subjects", result.association.n_subjects},
                  {"n_runs", result.association.n_runs},
                  {"observations", ids},
                  {"skipped", result.skipped},
                  {"seeds", {{"master", cfg.seed}, {"consensus", consensus_seed}, {"permutation", permutation_seed}}},
                  {"n_communities", result.consensus.communities.cover.n_communities()}};
    write_text_file(out / "manifest.json", dump_json(manifest));
  }
  return result;
}

ConsistencyReport score_cover(const fs::path& cover_json, const fs::path& run_dir, Index n_perm, std::uint64_t seed) {
  const auto cover = read_cover(cover_json);
  const auto root = run_dir / "subjects";
  if (!fs::is_directory(root)) fail(ErrorCode::FileNotFound, "no subject artifacts under " + run_dir.string());
  std::vector<fs::path> dirs;
  for (const auto& de : fs::directory_iterator(root))
    if (de.is_directory() && fs::exists(de.path() / "incidence.csv")) dirs.push_back(de.path());
  if (dirs.empty()) fail(ErrorCode::FileNotFound, "no cached incidence matrices under " + root.string());
  std::vector<Entry> entries;
  for (const auto& d : dirs) {
    Entry e{d, d.filename().string(), {}, {}};
    if (!parse_subject_run(e.stem, e.subject_id, e.run_id)) e.subject_id = e.stem;
    entries.push_back(std::move(e));
  }
  sort_entries(entries);
  std::vector<IncidenceMatrix> hs;
  std::vector<std::string> ids;
  for (const auto& e : entries) {
    hs.push_back(IncidenceMatrix::from_dense(read_matrix_csv(e.file / "incidence.csv").cast<std::uint8_t>()));
    ids.push_back(e.stem);
  }
  return permutation_pvalue(hs, cover, n_perm, seed, ids);
}

ExportKind parse_export_kind(const std::string& s) {
  if (s == "normalized") return ExportKind::Normalized;
  if (s == "weights") return ExportKind::Weights;
  if (s == "incidence") return ExportKind::Incidence;
  if (s == "line-graph") return ExportKind::LineGraph;
  if (s == "laplacian") return ExportKind::Laplacian;
  if (s == "eigenvalues") return ExportKind::Eigenvalues;
  fail(ErrorCode::InvalidArgument, "unknown export kind '" + s + "'");
}

void export_matrix(const PipelineConfig& cfg, const fs::path& input, ExportKind kind, const fs::path& out) {
  validate(cfg);
  const auto raw = load_time_series(input, format_from_extension(input), cfg.transpose);
  const Matrix normalized = normalize_rows(raw.data);
  if (kind == ExportKind::Normalized) return write_matrix_csv(out, normalized);
  LassoOptions lopts{cfg.lambda, cfg.tol, cfg.max_iter};
  const auto w = regress_all(normalized, lopts, cfg.threads);
  if (kind == ExportKind::Weights) return write_matrix_csv(out, w.weights);
  Index order = cfg.e_subject;
  if (order == 0) {
    const Matrix scores[] = {w.weights};
    const Index n = w.weights.rows();
    order = min_uniform_order(std::span<const Matrix>(scores), cfg.e_max > 0 ? std::min(cfg.e_max, n) : n,
                              cfg.positive_only);
  }
  const auto h = build_hyperedges(w, order, cfg.positive_only);
  if (kind == ExportKind::Incidence) return write_matrix_csv(out, h.dense());
  const auto g = line_graph(h);
  if (kind == ExportKind::LineGraph) return write_matrix_csv(out, g.similarity);
  if (kind == ExportKind::Laplacian) return write_matrix_csv(out, normalized_laplacian(g));
  write_matrix_csv(out, Matrix(laplacian_spectrum(g).eigenvalues));
}

void write_synthetic_cohort(const SyntheticSpec& spec, const fs::path& dir) {
  validate(spec);
  fs::create_directories(dir);
  for (Index s = 0; s < spec.n_subjects; ++s)
    for (Index r = 0; r < spec.n_runs; ++r) {
      const auto ts = generate_subject(spec, s, r);
      write_matrix_csv(dir / (synthetic_stem(spec, s, r) + ".csv"), ts.data);
    }
  json truth = cover_to_json(spec.planted);
  truth["generator"] = {{"n_rois", spec.n_rois},
                        {"n_timepoints", spec.n_timepoints},
                        {"signal_strength", spec.signal_strength},
                        {"noise_std", spec.noise_std},
                        {"ar", spec.ar},
                        {"n_subjects", spec.n_subjects},
                        {"n_runs", spec.n_runs},
                        {"seed", spec.seed}};
  write_text_file(dir / "ground_truth.json", dump_json(truth));
}

}  // namespace hypercomm
