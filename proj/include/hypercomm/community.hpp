#pragma once

#include "hypercomm/hypergraph.hpp"
#include "hypercomm/spectral.hpp"
#include "hypercomm/types.hpp"

#include <cstdint>
#include <vector>

namespace hypercomm {

// Overlapping community assignment.
struct Cover {
  BinaryMatrix membership;  // N x K, Y(i, c) = 1 iff node i is in community c
  std::vector<Index> community_sizes;
  // Column c of `membership` came from hyperedge label source_labels[c] (empty
  // communities are pruned and the rest renumbered in label order).
  std::vector<Index> source_labels;
  // Share of node i's hyperedges that carry community c; rows sum to 1 for
  // nodes in at least one hyperedge. Reporting only.
  Matrix membership_strength;

  Index n_nodes() const { return membership.rows(); }
  Index n_communities() const { return membership.cols(); }
  std::vector<std::vector<Index>> communities() const;

  // Builds a cover from explicit node sets; strength is split evenly over a
  // node's communities. Empty sets are dropped.
  static Cover from_communities(Index n_nodes, const std::vector<std::vector<Index>>& sets);
};

struct CoMembershipMatrix {
  BinaryMatrix matrix;  // symmetric, unit diagonal

  Index size() const { return matrix.rows(); }
};

// Each node inherits the label of every hyperedge it belongs to.
Cover node_membership(const IncidenceMatrix& h, const std::vector<Index>& edge_labels, Index k);

// M(i, j) = 1 iff nodes i and j share a community; M(i, i) = 1.
CoMembershipMatrix co_membership(const Cover& cover);

struct ClusteringOptions {
  Index k_override = 0;  // 0 selects k with the eigengap rule
  Index k_max = 30;      // clamped to n_edges - 1
  bool require_connected = true;
  KMeansOptions kmeans;
};

struct HypergraphCommunities {
  LineGraph line_graph;
  SpectralResult spectral;
  Cover cover;
};

// Line graph -> eigengap (unless overridden) -> spectral clustering -> node cover.
// Throws DisconnectedLineGraph when require_connected is set and the line graph
// has more than one component.
HypergraphCommunities cluster_hypergraph(const IncidenceMatrix& h, std::uint64_t seed,
                                         const ClusteringOptions& opts = {});

}  // namespace hypercomm
