#pragma once

#include "hypercomm/lasso.hpp"
#include "hypercomm/types.hpp"

#include <span>
#include <vector>

namespace hypercomm {

// Hypergraph stored by hyperedge; edges[j] is the sorted node set of e_j.
struct IncidenceMatrix {
  Index n_nodes = 0;
  Index order = 0;  // nominal hyperedge cardinality e
  std::vector<std::vector<Index>> edges;

  Index n_edges() const { return static_cast<Index>(edges.size()); }
  bool is_uniform() const;
  BinaryMatrix dense() const;  // N x K, H(i, j) = 1 iff node i is in e_j

  static IncidenceMatrix from_dense(const BinaryMatrix& h);
};

// Symmetric Jaccard similarity between hyperedges, zero diagonal.
struct LineGraph {
  Matrix similarity;

  Index size() const { return similarity.rows(); }
};

// Hyperedge i = {i} plus the (order - 1) largest off-diagonal entries of row i,
// ties going to the lowest column index. Entries are ranked by signed value, so
// zero or negative coefficients fill the hyperedge when there are not enough
// positive ones. With `positive_only`, those nonpositive picks are dropped and
// the result may be non-uniform.
IncidenceMatrix build_hyperedges(const Matrix& scores, Index order, bool positive_only = false);
IncidenceMatrix build_hyperedges(const WeightMatrix& w, Index order, bool positive_only = false);

double jaccard(const std::vector<Index>& a, const std::vector<Index>& b);

LineGraph line_graph(const IncidenceMatrix& h);

// Single connected component over edges with similarity > 0.
bool is_connected(const LineGraph& g);

// Smallest e in [2, e_max] for which every line graph is connected.
// Throws NoConnectedOrder when none qualifies.
Index min_uniform_order(std::span<const Matrix> score_matrices, Index e_max, bool positive_only = false);
Index min_uniform_order(std::span<const WeightMatrix> weights, Index e_max, bool positive_only = false);

}  // namespace hypercomm
