#pragma once

#include "hypercomm/community.hpp"
#include "hypercomm/scoring.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace hypercomm {

// {"n_nodes", "n_communities", "communities": [[node ids]], "community_sizes",
//  "membership_strength": N x K, "membership_strength_normalization"}
nlohmann::json cover_to_json(const Cover& cover);
// Reads "n_nodes" and "communities"; strengths are recomputed by even split.
Cover cover_from_json(const nlohmann::json& j);

Cover read_cover(const std::filesystem::path& path);
void write_cover(const std::filesystem::path& path, const Cover& cover);

nlohmann::json report_to_json(const ConsistencyReport& report);
// community,size,q_mean,q_std,q_random_mean,q_random_std,p_value,z_score
std::string report_to_csv(const ConsistencyReport& report);

std::string dump_json(const nlohmann::json& j);

}  // namespace hypercomm
