#include "hypercomm/hypergraph.hpp"

#include "hypercomm/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace hypercomm {

bool IncidenceMatrix::is_uniform() const {
  return std::all_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return static_cast<Index>(e.size()) == order; });
}

BinaryMatrix IncidenceMatrix::dense() const {
  BinaryMatrix h = BinaryMatrix::Zero(n_nodes, n_edges());
  for (Index j = 0; j < n_edges(); ++j)
    for (Index v : edges[static_cast<std::size_t>(j)]) h(v, j) = 1;
  return h;
}

IncidenceMatrix IncidenceMatrix::from_dense(const BinaryMatrix& h) {
  IncidenceMatrix out;
  out.n_nodes = h.rows();
  out.edges.resize(static_cast<std::size_t>(h.cols()));
  for (Index j = 0; j < h.cols(); ++j) {
    for (Index i = 0; i < h.rows(); ++i) {
      if (h(i, j) > 1) fail(ErrorCode::InvalidArgument, "incidence entries must be 0 or 1");
      if (h(i, j)) out.edges[static_cast<std::size_t>(j)].push_back(i);
    }
    out.order = std::max<Index>(out.order, static_cast<Index>(out.edges[static_cast<std::size_t>(j)].size()));
  }
  return out;
}

IncidenceMatrix build_hyperedges(const Matrix& scores, Index order, bool positive_only) {
  const Index n = scores.rows();
  if (scores.cols() != n) fail(ErrorCode::DimensionMismatch, "score matrix must be square");
  if (order < 2 || order > n)
    fail(ErrorCode::InvalidOrder,
         "hyperedge order " + std::to_string(order) + " outside [2, " + std::to_string(n) + "]");

  IncidenceMatrix h;
  h.n_nodes = n;
  h.order = order;
  h.edges.resize(static_cast<std::size_t>(n));
  std::vector<Index> candidates;
  for (Index i = 0; i < n; ++i) {
    candidates.clear();
    for (Index j = 0; j < n; ++j)
      if (j != i) candidates.push_back(j);
    const auto row = scores.row(i);
    const auto take = static_cast<std::ptrdiff_t>(order - 1);
    std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(), [&](Index a, Index b) {
      if (row[a] != row[b]) return row[a] > row[b];
      return a < b;
    });
    auto& edge = h.edges[static_cast<std::size_t>(i)];
    edge.push_back(i);
    for (std::ptrdiff_t k = 0; k < take; ++k) {
      const Index j = candidates[static_cast<std::size_t>(k)];
      if (positive_only && !(row[j] > 0.0)) break;
      edge.push_back(j);
    }
    std::sort(edge.begin(), edge.end());
  }
  return h;
}

IncidenceMatrix build_hyperedges(const WeightMatrix& w, Index order, bool positive_only) {
  return build_hyperedges(w.weights, order, positive_only);
}

double jaccard(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

LineGraph line_graph(const IncidenceMatrix& h) {
  const Index k = h.n_edges();
  LineGraph g;
  g.similarity = Matrix::Zero(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      const double s = jaccard(h.edges[static_cast<std::size_t>(i)], h.edges[static_cast<std::size_t>(j)]);
      g.similarity(i, j) = s;
      g.similarity(j, i) = s;
    }
  return g;
}

bool is_connected(const LineGraph& g) {
  const Index k = g.size();
  if (k <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  std::deque<Index> queue{0};
  seen[0] = 1;
  Index reached = 1;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop_front();
    for (Index v = 0; v < k; ++v) {
      if (!seen[static_cast<std::size_t>(v)] && g.similarity(u, v) > 0.0) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == k;
}

Index min_uniform_order(std::span<const Matrix> score_matrices, Index e_max, bool positive_only) {
  if (score_matrices.empty()) fail(ErrorCode::InvalidArgument, "need at least one weight matrix");
  Index n = score_matrices.front().rows();
  for (const auto& m : score_matrices)
    if (m.rows() != n) fail(ErrorCode::DimensionMismatch, "weight matrices differ in size");
  if (e_max > n) fail(ErrorCode::InvalidOrder, "e_max exceeds the number of nodes");
  for (Index e = 2; e <= e_max; ++e) {
    const bool all = std::all_of(score_matrices.begin(), score_matrices.end(), [&](const Matrix& m) {
      return is_connected(line_graph(build_hyperedges(m, e, positive_only)));
    });
    if (all) return e;
  }
  fail(ErrorCode::NoConnectedOrder,
       "no hyperedge order up to " + std::to_string(e_max) + " gives connected line graphs for every input");
}

Index min_uniform_order(std::span<const WeightMatrix> weights, Index e_max, bool positive_only) {
  std::vector<Matrix> scores;
  scores.reserve(weights.size());
  for (const auto& w : weights) scores.push_back(w.weights);
  return min_uniform_order(std::span<const Matrix>(scores), e_max, positive_only);
}

}  // namespace hypercomm
