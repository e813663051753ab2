#pragma once

#include "hypercomm/community.hpp"
#include "hypercomm/hypergraph.hpp"
#include "hypercomm/types.hpp"

#include <cstdint>
#include <span>

namespace hypercomm {

// Fraction of subject/run co-membership matrices in which two nodes share a community.
struct AssociationMatrix {
  Matrix matrix;
  Index n_subjects = 1;
  Index n_runs = 1;
  Index n_matrices = 0;

  Index size() const { return matrix.rows(); }
};

// Elementwise mean. The sum is accumulated in integers so A * count is exact.
AssociationMatrix association_matrix(std::span<const CoMembershipMatrix> matrices);

// Group hyperedge i = {i} plus the e_group - 1 largest off-diagonal entries of row i.
IncidenceMatrix group_hyperedges(const AssociationMatrix& a, Index e_group);

struct ConsensusOptions {
  Index e_group = 6;
  // Replace e_group with the smallest order whose group line graph is connected.
  bool auto_order = false;
  ClusteringOptions clustering;
};

struct ConsensusResult {
  Index e_group = 0;  // order actually used
  IncidenceMatrix hypergraph;
  HypergraphCommunities communities;
};

// group_hyperedges -> line graph -> eigengap -> spectral clustering -> node cover.
// A disconnected group line graph is an error unless auto_order is set.
ConsensusResult consensus_communities(const AssociationMatrix& a, std::uint64_t seed, const ConsensusOptions& opts = {});

}  // namespace hypercomm
