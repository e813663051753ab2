#pragma once

#include "hypercomm/community.hpp"
#include "hypercomm/consensus.hpp"
#include "hypercomm/hypergraph.hpp"
#include "hypercomm/lasso.hpp"
#include "hypercomm/scoring.hpp"
#include "hypercomm/synth.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hypercomm {

struct PipelineConfig {
  double lambda = 0.01;
  double tol = 1e-8;
  std::size_t max_iter = 10000;
  Index e_subject = 0;  // 0: smallest order giving connected line graphs for every subject
  Index e_max = 0;      // upper bound of that search, 0: number of ROIs
  Index e_group = 6;
  bool auto_group_order = false;
  Index k_override = 0;  // 0: eigengap
  Index k_max = 30;
  std::uint64_t seed = 0;
  Index n_perm = 100;
  Index kmeans_n_init = 20;
  Index kmeans_max_iter = 300;
  bool positive_only = false;
  bool transpose = false;
  bool skip_failures = false;
  unsigned threads = 1;
  std::string input_glob;
  std::string output_dir;
};

nlohmann::json config_to_json(const PipelineConfig& cfg);

// Sets one field from its string form (keys as in config_to_json).
void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value);

void validate(const PipelineConfig& cfg);

// Directory part taken literally, file-name part matched with shell wildcards.
// Sorted lexicographically.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

struct SubjectArtifacts {
  std::string stem;
  std::string subject_id;
  std::string run_id;
  std::filesystem::path source;
  std::uint64_t seed = 0;
  WeightMatrix weights;
  Index order = 0;
  IncidenceMatrix hypergraph;
  Vector eigenvalues;
  std::vector<Index> edge_labels;
  Cover cover;
  CoMembershipMatrix comembership;
  bool weights_cached = false;
  bool clustering_cached = false;
};

// ingest -> lasso -> hyperedges -> line graph -> spectral -> cover for one
// file. Automatic order uses this subject alone. Artifacts go to
// <output_dir>/subjects/<stem>/ and a manifest to <output_dir>/manifest.json.
SubjectArtifacts run_subject(const PipelineConfig& cfg, const std::filesystem::path& file);

struct GroupResult {
  std::vector<SubjectArtifacts> subjects;  // sorted by (subject, run)
  std::vector<std::string> skipped;
  Index e_subject = 0;
  AssociationMatrix association;
  ConsensusResult consensus;
  ConsistencyReport report;
};

// Every subject of input_glob, the association matrix, consensus cover and
// consistency report. Per-subject results found in the output directory with a
// matching configuration are reused instead of recomputed.
GroupResult run_group(const PipelineConfig& cfg);

// Scores `cover` against the cached subject hypergraphs of a group run directory.
ConsistencyReport score_cover(const std::filesystem::path& cover_json, const std::filesystem::path& run_dir,
                              Index n_perm, std::uint64_t seed);

enum class ExportKind { Normalized, Weights, Incidence, LineGraph, Laplacian, Eigenvalues };
ExportKind parse_export_kind(const std::string& s);

// Computes one intermediate matrix for a single time-series file and writes it as CSV.
void export_matrix(const PipelineConfig& cfg, const std::filesystem::path& input, ExportKind kind,
                   const std::filesystem::path& out);

// Writes sub-<s>_run-<r>.csv for every subject and run plus ground_truth.json.
void write_synthetic_cohort(const SyntheticSpec& spec, const std::filesystem::path& dir);

std::uint64_t subject_seed(std::uint64_t master, const std::string& subject_id, const std::string& run_id);

}  // namespace hypercomm
