#pragma once

#include "hypercomm/hypergraph.hpp"
#include "hypercomm/types.hpp"

#include <cstdint>
#include <vector>

namespace hypercomm {

// L = I - D^{-1/2} G D^{-1/2} for a zero-diagonal similarity matrix G.
// Throws IsolatedVertexError for a zero-degree vertex.
Matrix normalized_laplacian(const LineGraph& g);

struct LaplacianSpectrum {
  Vector eigenvalues;  // ascending
  Matrix eigenvectors;  // column j pairs with eigenvalues[j]
};

LaplacianSpectrum laplacian_spectrum(const LineGraph& g);

// argmax over k in [k_min, k_max] of ev[k] - ev[k-1] (ascending, 0-based),
// i.e. the gap after the k-th smallest eigenvalue. Ties go to the smallest k.
Index eigengap_k(const Vector& eigenvalues, Index k_min, Index k_max);

// Default search window: [2, min(30, n - 1)].
Index default_k_max(Index n_vertices);

struct KMeansOptions {
  Index n_init = 20;
  Index max_iter = 300;
};

struct KMeansResult {
  std::vector<Index> labels;  // relabelled in order of first appearance
  double wcss = 0.0;
};

// Lloyd iterations from k-means++ seeds, best of n_init restarts. Restart r
// draws from its own stream derived from (seed, r).
KMeansResult kmeans(const Matrix& points, Index k, std::uint64_t seed, const KMeansOptions& opts = {});

double within_cluster_ss(const Matrix& points, const std::vector<Index>& labels, Index k);

struct SpectralResult {
  std::vector<Index> labels;  // hyperedge -> community in [0, n_communities)
  Index n_communities = 0;
  Vector eigenvalues;  // full ascending spectrum of L
  Matrix embedding;    // eigenvectors of the n_communities smallest eigenvalues
};

// Embeds vertices with the k lowest eigenvectors of L, normalizes each row to
// unit length and clusters the rows with k-means.
SpectralResult spectral_clustering(const LineGraph& g, Index k, std::uint64_t seed, const KMeansOptions& opts = {});
SpectralResult spectral_clustering(const LaplacianSpectrum& spectrum, Index k, std::uint64_t seed,
                                   const KMeansOptions& opts = {});

// Canonical relabelling: first-seen label becomes 0, next 1, and so on.
std::vector<Index> relabel_by_first_appearance(const std::vector<Index>& labels);

}  // namespace hypercomm
