#include "hypercomm/spectral.hpp"

#include "hypercomm/error.hpp"
#include "hypercomm/seed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypercomm {

Matrix normalized_laplacian(const LineGraph& g) {
  const Index n = g.size();
  if (g.similarity.cols() != n) fail(ErrorCode::DimensionMismatch, "line graph must be square");
  Vector inv_sqrt_deg(n);
  for (Index i = 0; i < n; ++i) {
    const double d = g.similarity.row(i).sum();
    if (!(d > 0.0)) throw IsolatedVertexError(static_cast<std::size_t>(i));
    inv_sqrt_deg[i] = 1.0 / std::sqrt(d);
  }
  Matrix lap(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      lap(i, j) = (i == j ? 1.0 : 0.0) - inv_sqrt_deg[i] * g.similarity(i, j) * inv_sqrt_deg[j];
  // exact symmetry regardless of rounding order
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) lap(j, i) = lap(i, j);
  return lap;
}

LaplacianSpectrum laplacian_spectrum(const LineGraph& g) {
  const Eigen::MatrixXd lap = normalized_laplacian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) fail(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
  LaplacianSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

Index default_k_max(Index n_vertices) { return std::min<Index>(30, n_vertices - 1); }

Index eigengap_k(const Vector& eigenvalues, Index k_min, Index k_max) {
  if (k_min < 2 || k_max < k_min || k_max >= eigenvalues.size())
    fail(ErrorCode::Range, "eigengap search needs 2 <= k_min <= k_max < " + std::to_string(eigenvalues.size()) +
                               ", got [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
  Index best_k = k_min;
  double best_gap = eigenvalues[k_min] - eigenvalues[k_min - 1];
  for (Index k = k_min + 1; k <= k_max; ++k) {
    const double gap = eigenvalues[k] - eigenvalues[k - 1];
    if (gap > best_gap + 1e-12) {
      best_gap = gap;
      best_k = k;
    }
  }
  return best_k;
}

std::vector<Index> relabel_by_first_appearance(const std::vector<Index>& labels) {
  std::vector<Index> map;
  std::vector<Index> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Index l = labels[i];
    if (l >= static_cast<Index>(map.size())) map.resize(static_cast<std::size_t>(l + 1), -1);
    if (map[static_cast<std::size_t>(l)] < 0) {
      Index next = 0;
      for (Index m : map)
        if (m >= 0) ++next;
      map[static_cast<std::size_t>(l)] = next;
    }
    out[i] = map[static_cast<std::size_t>(l)];
  }
  return out;
}

double within_cluster_ss(const Matrix& points, const std::vector<Index>& labels, Index k) {
  Matrix centroids = Matrix::Zero(k, points.cols());
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < points.rows(); ++i) {
    centroids.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
    ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
  }
  for (Index c = 0; c < k; ++c)
    if (counts[static_cast<std::size_t>(c)] > 0) centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  double ss = 0.0;
  for (Index i = 0; i < points.rows(); ++i)
    ss += (points.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  return ss;
}

namespace {

Matrix seed_plus_plus(const Matrix& points, Index k, Rng& rng) {
  const Index m = points.rows();
  Matrix centers(k, points.cols());
  std::vector<double> dist(static_cast<std::size_t>(m), std::numeric_limits<double>::infinity());
  std::vector<char> chosen(static_cast<std::size_t>(m), 0);

  Index pick = static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(m)));
  for (Index c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (double d : dist) total += d;
      if (total > 0.0) {
        const double target = uniform01(rng) * total;
        double acc = 0.0;
        pick = -1;
        for (Index i = 0; i < m; ++i) {
          acc += dist[static_cast<std::size_t>(i)];
          if (dist[static_cast<std::size_t>(i)] > 0.0 && acc > target) {
            pick = i;
            break;
          }
        }
        if (pick < 0)  // rounding at the tail
          for (Index i = m - 1; i >= 0; --i)
            if (dist[static_cast<std::size_t>(i)] > 0.0) {
              pick = i;
              break;
            }
      } else {
        // every point coincides with a center; take the first unused one
        pick = 0;
        while (pick < m - 1 && chosen[static_cast<std::size_t>(pick)]) ++pick;
      }
    }
    chosen[static_cast<std::size_t>(pick)] = 1;
    centers.row(c) = points.row(pick);
    for (Index i = 0; i < m; ++i)
      dist[static_cast<std::size_t>(i)] =
          std::min(dist[static_cast<std::size_t>(i)], (points.row(i) - centers.row(c)).squaredNorm());
  }
  return centers;
}

KMeansResult lloyd(const Matrix& points, Matrix centers, Index max_iter) {
  const Index m = points.rows();
  const Index k = centers.rows();
  std::vector<Index> labels(static_cast<std::size_t>(m), -1);
  std::vector<double> dist(static_cast<std::size_t>(m), 0.0);
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);

  for (Index iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (Index i = 0; i < m; ++i) {
      Index best = 0;
      double best_d = (points.row(i) - centers.row(0)).squaredNorm();
      for (Index c = 1; c < k; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      dist[static_cast<std::size_t>(i)] = best_d;
      if (labels[static_cast<std::size_t>(i)] != best) {
        labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }

    std::fill(counts.begin(), counts.end(), 0);
    for (Index l : labels) ++counts[static_cast<std::size_t>(l)];
    // Empty cluster repair: move the point farthest from its centroid.
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Index far = -1;
      for (Index i = 0; i < m; ++i) {
        if (counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] <= 1) continue;
        if (far < 0 || dist[static_cast<std::size_t>(i)] > dist[static_cast<std::size_t>(far)]) far = i;
      }
      if (far < 0) break;
      --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
      labels[static_cast<std::size_t>(far)] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      dist[static_cast<std::size_t>(far)] = 0.0;
      changed = true;
    }

    centers.setZero();
    for (Index i = 0; i < m; ++i) centers.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
    for (Index c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

    if (!changed) break;
  }
  KMeansResult res;
  res.labels = std::move(labels);
  res.wcss = within_cluster_ss(points, res.labels, k);
  return res;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, Index k, std::uint64_t seed, const KMeansOptions& opts) {
  const Index m = points.rows();
  if (k < 1 || k > m)
    fail(ErrorCode::Range, "k-means needs 1 <= k <= number of points (" + std::to_string(m) + "), got " +
                               std::to_string(k));
  if (opts.n_init < 1 || opts.max_iter < 1) fail(ErrorCode::InvalidArgument, "n_init and max_iter must be positive");

  KMeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();
  for (Index r = 0; r < opts.n_init; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    auto res = lloyd(points, seed_plus_plus(points, k, rng), opts.max_iter);
    if (res.wcss < best.wcss) best = std::move(res);
  }
  best.labels = relabel_by_first_appearance(best.labels);
  return best;
}

SpectralResult spectral_clustering(const LaplacianSpectrum& spectrum, Index k, std::uint64_t seed,
                                   const KMeansOptions& opts) {
  const Index n = spectrum.eigenvalues.size();
  if (k < 1 || k > n)
    fail(ErrorCode::Range, "number of communities must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  SpectralResult out;
  out.n_communities = k;
  out.eigenvalues = spectrum.eigenvalues;
  out.embedding = spectrum.eigenvectors.leftCols(k);

  Matrix rows = out.embedding;
  for (Index i = 0; i < n; ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 0.0) rows.row(i) /= norm;
  }
  out.labels = kmeans(rows, k, seed, opts).labels;
  return out;
}

SpectralResult spectral_clustering(const LineGraph& g, Index k, std::uint64_t seed, const KMeansOptions& opts) {
  return spectral_clustering(laplacian_spectrum(g), k, seed, opts);
}

}  // namespace hypercomm
