#include "hypercomm/community.hpp"

#include "hypercomm/error.hpp"

#include <algorithm>

namespace hypercomm {

std::vector<std::vector<Index>> Cover::communities() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n_communities()));
  for (Index c = 0; c < n_communities(); ++c)
    for (Index i = 0; i < n_nodes(); ++i)
      if (membership(i, c)) out[static_cast<std::size_t>(c)].push_back(i);
  return out;
}

Cover Cover::from_communities(Index n_nodes, const std::vector<std::vector<Index>>& sets) {
  std::vector<const std::vector<Index>*> kept;
  for (const auto& s : sets)
    if (!s.empty()) kept.push_back(&s);
  Cover cover;
  const auto k = static_cast<Index>(kept.size());
  cover.membership = BinaryMatrix::Zero(n_nodes, k);
  for (Index c = 0; c < k; ++c) {
    for (Index v : *kept[static_cast<std::size_t>(c)]) {
      if (v < 0 || v >= n_nodes)
        fail(ErrorCode::InvalidArgument, "community member " + std::to_string(v) + " out of range");
      cover.membership(v, c) = 1;
    }
    cover.source_labels.push_back(c);
  }
  cover.community_sizes.resize(static_cast<std::size_t>(k));
  for (Index c = 0; c < k; ++c)
    cover.community_sizes[static_cast<std::size_t>(c)] = cover.membership.col(c).cast<Index>().sum();
  cover.membership_strength = Matrix::Zero(n_nodes, k);
  for (Index i = 0; i < n_nodes; ++i) {
    const double deg = cover.membership.row(i).cast<double>().sum();
    if (deg > 0) cover.membership_strength.row(i) = cover.membership.row(i).cast<double>() / deg;
  }
  return cover;
}

Cover node_membership(const IncidenceMatrix& h, const std::vector<Index>& edge_labels, Index k) {
  if (static_cast<Index>(edge_labels.size()) != h.n_edges())
    fail(ErrorCode::DimensionMismatch, "need one label per hyperedge");
  const Index n = h.n_nodes;
  Matrix counts = Matrix::Zero(n, k);
  for (Index j = 0; j < h.n_edges(); ++j) {
    const Index label = edge_labels[static_cast<std::size_t>(j)];
    if (label < 0 || label >= k) fail(ErrorCode::Range, "hyperedge label out of [0, k)");
    for (Index v : h.edges[static_cast<std::size_t>(j)]) counts(v, label) += 1.0;
  }

  Cover cover;
  for (Index c = 0; c < k; ++c)
    if (counts.col(c).sum() > 0.0) cover.source_labels.push_back(c);
  const auto kept = static_cast<Index>(cover.source_labels.size());
  cover.membership = BinaryMatrix::Zero(n, kept);
  cover.membership_strength = Matrix::Zero(n, kept);
  cover.community_sizes.assign(static_cast<std::size_t>(kept), 0);
  for (Index c = 0; c < kept; ++c) {
    const Index src = cover.source_labels[static_cast<std::size_t>(c)];
    for (Index i = 0; i < n; ++i) {
      if (counts(i, src) > 0.0) {
        cover.membership(i, c) = 1;
        ++cover.community_sizes[static_cast<std::size_t>(c)];
      }
      cover.membership_strength(i, c) = counts(i, src);
    }
  }
  for (Index i = 0; i < n; ++i) {
    const double total = cover.membership_strength.row(i).sum();
    if (total > 0.0) cover.membership_strength.row(i) /= total;
  }
  return cover;
}

CoMembershipMatrix co_membership(const Cover& cover) {
  const Index n = cover.n_nodes();
  CoMembershipMatrix m;
  m.matrix = BinaryMatrix::Zero(n, n);
  const auto communities = cover.communities();
  for (const auto& members : communities)
    for (Index a : members)
      for (Index b : members) m.matrix(a, b) = 1;
  for (Index i = 0; i < n; ++i) m.matrix(i, i) = 1;
  return m;
}

HypergraphCommunities cluster_hypergraph(const IncidenceMatrix& h, std::uint64_t seed, const ClusteringOptions& opts) {
  HypergraphCommunities out;
  out.line_graph = line_graph(h);
  if (opts.require_connected && !is_connected(out.line_graph))
    fail(ErrorCode::DisconnectedLineGraph,
         "line graph of the order-" + std::to_string(h.order) + " hypergraph is disconnected; increase the hyperedge order");
  const auto spectrum = laplacian_spectrum(out.line_graph);
  const Index n_edges = h.n_edges();
  Index k = opts.k_override;
  if (k <= 0) {
    const Index k_max = std::min(opts.k_max, n_edges - 1);
    k = k_max >= 2 ? eigengap_k(spectrum.eigenvalues, 2, k_max) : 1;
  }
  if (k > n_edges) fail(ErrorCode::Range, "k exceeds the number of hyperedges");
  out.spectral = spectral_clustering(spectrum, k, seed, opts.kmeans);
  out.cover = node_membership(h, out.spectral.labels, k);
  return out;
}

}  // namespace hypercomm
