#include "hypercomm/pipeline.hpp"
#include "hypercomm/csv.hpp"
#include "hypercomm/error.hpp"
#include "hypercomm/ingest.hpp"
#include "hypercomm/lasso.hpp"
#include "hypercomm/scoring.hpp"
#include "hypercomm/serialize.hpp"

#include "oracles.hpp"
#include "temp_dir.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

using namespace hypercomm;
namespace fs = std::filesystem;

namespace {

SyntheticSpec small_cohort(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.n_rois = 30;
  spec.n_timepoints = 300;
  spec.planted = chain_cover(30, 3, 2);
  spec.n_subjects = 3;
  spec.n_runs = 1;
  spec.seed = seed;
  return spec;
}

PipelineConfig group_config(const TempDir& dir) {
  PipelineConfig cfg;
  cfg.input_glob = (dir / "in/*.csv").string();
  cfg.output_dir = (dir / "out").string();
  cfg.auto_group_order = true;
  cfg.n_perm = 20;
  cfg.seed = 3;
  return cfg;
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

}  // namespace

TEST_CASE("subject with three disjoint planted communities") {
  TempDir dir("subject");
  SyntheticSpec spec;
  spec.n_rois = 24;
  spec.n_timepoints = 400;
  spec.planted = Cover::from_communities(24, {{0, 1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}, {16, 17, 18, 19, 20, 21, 22, 23}});
  spec.seed = 1;
  write_synthetic_cohort(spec, dir / "in");
  const auto input = dir / "in/sub-01_run-1.csv";
  PipelineConfig cfg;
  cfg.output_dir = (dir / "out").string();

  // Within-block hyperedges recover the blocks exactly, but their line graph
  // is disconnected, which the pipeline refuses.
  cfg.e_subject = 4;
  try {
    run_subject(cfg, input);
    FAIL("expected DisconnectedLineGraph");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DisconnectedLineGraph);
  }
  const auto weights = regress_all(normalize_rows(load_time_series(input, TableFormat::Csv, false).data), LassoOptions{});
  const auto h = build_hyperedges(weights, 4);
  ClusteringOptions relaxed;
  relaxed.require_connected = false;
  const auto exact = cluster_hypergraph(h, 1, relaxed);
  CHECK(oracle::as_set_family(exact.cover.communities()) == oracle::as_set_family(spec.planted.communities()));

  cfg.e_subject = 0;
  const auto art = run_subject(cfg, input);
  CHECK(art.subject_id == "01");
  CHECK(art.run_id == "1");
  CHECK(art.order > 8);
  CHECK(art.cover.n_communities() == 3);
  // connecting hyperedges leak labels across blocks, but every block stays whole
  for (const auto& block : spec.planted.communities()) {
    bool contained = false;
    for (const auto& c : art.cover.communities())
      contained |= std::includes(c.begin(), c.end(), block.begin(), block.end());
    CHECK(contained);
  }
  for (const char* f : {"weights.csv", "incidence.csv", "comembership.csv", "eigenvalues.csv", "edge_labels.csv", "cover.json", "subject.json"})
    CHECK(fs::exists(dir / ("out/subjects/sub-01_run-1/" + std::string(f))));
  const auto manifest = nlohmann::json::parse(slurp(dir / "out/manifest.json"));
  CHECK(manifest["command"] == "subject");
  CHECK(manifest["e_subject"] == art.order);

  cfg.k_override = 2;
  CHECK(run_subject(cfg, input).cover.n_communities() <= 2);
}

TEST_CASE("group runs are reproducible, resumable and record their defaults") {
  TempDir dir("group");
  write_synthetic_cohort(small_cohort(2), dir / "in");
  const auto cfg = group_config(dir);
  const auto first = run_group(cfg);
  CHECK(first.subjects.size() == 3);
  for (const auto& s : first.subjects) {
    CHECK_FALSE(s.weights_cached);
    CHECK_FALSE(s.clustering_cached);
  }
  const std::vector<std::string> outputs{"association.csv", "group_incidence.csv", "group_eigenvalues.csv", "consensus_cover.json",
                                         "consistency_report.json", "consistency_report.csv", "manifest.json"};
  std::vector<std::string> before;
  for (const auto& f : outputs) before.push_back(slurp(dir / ("out/" + f)));

  const auto second = run_group(cfg);
  for (const auto& s : second.subjects) {
    CHECK(s.weights_cached);
    CHECK(s.clustering_cached);
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) CHECK_MESSAGE(slurp(dir / ("out/" + outputs[i])) == before[i], outputs[i]);

  // a fresh directory with the same seed reproduces every byte
  TempDir fresh("group-fresh");
  auto cfg2 = cfg;
  cfg2.output_dir = (fresh / "out").string();
  run_group(cfg2);
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i] == "manifest.json") continue;  // records the output directory
    CHECK_MESSAGE(slurp(fresh / ("out/" + outputs[i])) == before[i], outputs[i]);
  }

  // changing the clustering seed keeps the cached weights
  auto cfg3 = cfg;
  cfg3.seed = 4;
  for (const auto& s : run_group(cfg3).subjects) {
    CHECK(s.weights_cached);
    CHECK_FALSE(s.clustering_cached);
  }

  const auto manifest = nlohmann::json::parse(before.back());
  CHECK(manifest["config"]["lambda"] == 0.01);
  CHECK(manifest["config"]["e_group"] == 6);
  CHECK(manifest["n_subjects"] == 3);

  const auto report = score_cover(dir / "out/consensus_cover.json", dir / "out", 20, 3);
  CHECK(report.q == first.report.q);
  CHECK(report.p_values == first.report.p_values);
}

TEST_CASE("default configuration") {
  const PipelineConfig cfg;
  const auto j = config_to_json(cfg);
  CHECK(j["lambda"] == 0.01);
  CHECK(j["e_group"] == 6);
  CHECK(j["n_perm"] == 100);
  CHECK(j["e_subject"] == "auto");
  PipelineConfig c;
  set_config_value(c, "lambda", "0.1");
  set_config_value(c, "e_subject", "5");
  set_config_value(c, "k", "3");
  CHECK(c.lambda == 0.1);
  CHECK(c.e_subject == 5);
  CHECK(c.k_override == 3);
  set_config_value(c, "e_subject", "auto");
  CHECK(c.e_subject == 0);
  CHECK_THROWS_AS(set_config_value(c, "lambda", "abc"), Error);
  CHECK_THROWS_AS(set_config_value(c, "nope", "1"), Error);
  c.lambda = -1;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("failed subjects abort the group unless skipped") {
  TempDir dir("skip");
  write_synthetic_cohort(small_cohort(5), dir / "in");
  {
    std::ofstream bad(dir / "in/sub-04_run-1.csv");
    for (int i = 0; i < 30; ++i) {
      for (int t = 0; t < 300; ++t) bad << (t ? "," : "") << (i == 7 ? 1.0 : (i * 31 + t * 17) % 23 * 0.1);
      bad << "\n";
    }
  }
  auto cfg = group_config(dir);
  try {
    run_group(cfg);
    FAIL("expected DegenerateRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateRow);
    CHECK(std::string(e.what()).find("sub-04_run-1") != std::string::npos);
  }
  cfg.skip_failures = true;
  const auto res = run_group(cfg);
  CHECK(res.subjects.size() == 3);
  REQUIRE(res.skipped.size() == 1);
  CHECK(res.skipped[0].rfind("sub-04_run-1: ", 0) == 0);
}

TEST_CASE("glob expansion and matrix export") {
  TempDir dir("glob");
  auto spec = small_cohort(6);
  spec.n_subjects = 2;
  spec.n_runs = 2;
  write_synthetic_cohort(spec, dir / "in");
  const auto files = expand_glob((dir / "in/sub-0?_run-2.csv").string());
  REQUIRE(files.size() == 2);
  CHECK(files[0].filename() == "sub-01_run-2.csv");
  CHECK(files[1].filename() == "sub-02_run-2.csv");
  CHECK(expand_glob((dir / "in").string()).size() == 4);
  CHECK_THROWS_AS(expand_glob((dir / "in/*.tsv").string()), Error);

  PipelineConfig cfg;
  cfg.e_subject = 4;
  const auto input = dir / "in/sub-01_run-1.csv";
  for (const char* kind : {"normalized", "weights", "incidence", "line-graph", "laplacian", "eigenvalues"}) {
    const auto out = dir / (std::string("export-") + kind + ".csv");
    export_matrix(cfg, input, parse_export_kind(kind), out);
    const Matrix m = read_matrix_csv(out);
    CHECK(m.size() > 0);
  }
  const Matrix w = read_matrix_csv(dir / "export-weights.csv");
  CHECK(w.rows() == 30);
  CHECK(w.diagonal().isZero());
  CHECK_THROWS_AS(parse_export_kind("bogus"), Error);
}
