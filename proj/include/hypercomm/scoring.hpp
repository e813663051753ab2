#pragma once

#include "hypercomm/community.hpp"
#include "hypercomm/hypergraph.hpp"
#include "hypercomm/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hypercomm {

// (# hyperedges with every node in the community) / (# hyperedges touching it).
// 0 when no hyperedge touches the community. Throws EmptyCommunity for an empty set.
double consistency_score(const IncidenceMatrix& h, std::span<const Index> community_nodes);

struct ConsistencyReport {
  // q(o, c): score of community c on observation o (one subject/run hypergraph).
  Matrix q;
  std::vector<std::string> observations;
  std::vector<Index> community_sizes;
  Vector q_mean;
  Vector q_std;  // population standard deviation over observations
  Vector q_random_mean;  // over all permutations and observations
  Vector q_random_std;
  // (1 + #{permutation mean >= observed mean}) / (1 + n_permutations)
  Vector p_values;
  // (observed mean - mean of permutation means) / std of permutation means; NaN when that std is 0.
  Vector z_scores;
  Index n_permutations = 0;
  std::uint64_t seed = 0;
};

// Null model: each community is replaced by a uniformly drawn node set of the
// same size; permutation p uses its own stream derived from (seed, p).
ConsistencyReport permutation_pvalue(std::span<const IncidenceMatrix> hypergraphs, const Cover& cover, Index n_perm,
                                     std::uint64_t seed, std::vector<std::string> observation_ids = {});

// Overlapping-cover agreement: communities are paired by a maximum-weight
// one-to-one matching on set F1; the matched F1 sum is divided by the larger of
// the two community counts, so extra or missing communities score 0.
double overlapping_f1(const std::vector<std::vector<Index>>& detected, const std::vector<std::vector<Index>>& truth);

double set_f1(const std::vector<Index>& a, const std::vector<Index>& b);

}  // namespace hypercomm
