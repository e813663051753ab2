#include "hypercomm/serialize.hpp"

#include "hypercomm/csv.hpp"
#include "hypercomm/error.hpp"

#include <cmath>

namespace hypercomm {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(std::isfinite(v[i]) ? json(v[i]) : json(nullptr));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

}  // namespace

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json cover_to_json(const Cover& cover) {
  json j;
  j["n_nodes"] = cover.n_nodes();
  j["n_communities"] = cover.n_communities();
  j["communities"] = cover.communities();
  j["community_sizes"] = cover.community_sizes;
  j["membership_strength"] = matrix_json(cover.membership_strength);
  j["membership_strength_normalization"] = "share of the node's hyperedges carrying each community";
  return j;
}

Cover cover_from_json(const json& j) {
  try {
    const auto n = j.at("n_nodes").get<Index>();
    const auto sets = j.at("communities").get<std::vector<std::vector<Index>>>();
    return Cover::from_communities(n, sets);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed cover JSON: ") + e.what());
  }
}

Cover read_cover(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
  return cover_from_json(j);
}

void write_cover(const std::filesystem::path& path, const Cover& cover) {
  write_text_file(path, dump_json(cover_to_json(cover)));
}

json report_to_json(const ConsistencyReport& r) {
  json j;
  j["n_permutations"] = r.n_permutations;
  j["seed"] = r.seed;
  j["observations"] = r.observations;
  j["community_sizes"] = r.community_sizes;
  j["q"] = matrix_json(r.q);
  j["q_mean"] = vector_json(r.q_mean);
  j["q_std"] = vector_json(r.q_std);
  j["q_random_mean"] = vector_json(r.q_random_mean);
  j["q_random_std"] = vector_json(r.q_random_std);
  j["p_values"] = vector_json(r.p_values);
  j["z_scores"] = vector_json(r.z_scores);
  j["p_value_definition"] = "(1 + #{permutation mean >= observed mean}) / (1 + n_permutations)";
  return j;
}

std::string report_to_csv(const ConsistencyReport& r) {
  std::string out = "community,size,q_mean,q_std,q_random_mean,q_random_std,p_value,z_score\n";
  for (Index c = 0; c < r.q_mean.size(); ++c) {
    out += std::to_string(c) + ',' + std::to_string(r.community_sizes[static_cast<std::size_t>(c)]) + ',' +
           format_double(r.q_mean[c]) + ',' + format_double(r.q_std[c]) + ',' + format_double(r.q_random_mean[c]) +
           ',' + format_double(r.q_random_std[c]) + ',' + format_double(r.p_values[c]) + ',' +
           (std::isfinite(r.z_scores[c]) ? format_double(r.z_scores[c]) : std::string("nan")) + '\n';
  }
  return out;
}

}  // namespace hypercomm
