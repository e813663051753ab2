#include "hypercomm/scoring.hpp"

#include "hypercomm/error.hpp"
#include "hypercomm/seed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hypercomm {
namespace {

double score_with_mask(const IncidenceMatrix& h, const std::vector<char>& in_community) {
  std::size_t within = 0;
  std::size_t associated = 0;
  for (const auto& edge : h.edges) {
    std::size_t inside = 0;
    for (Index v : edge) inside += in_community[static_cast<std::size_t>(v)] ? 1 : 0;
    if (inside > 0) ++associated;
    if (inside == edge.size() && !edge.empty()) ++within;
  }
  return associated == 0 ? 0.0 : static_cast<double>(within) / static_cast<double>(associated);
}

std::vector<char> make_mask(Index n, std::span<const Index> nodes) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (Index v : nodes) {
    if (v < 0 || v >= n) fail(ErrorCode::InvalidArgument, "community node " + std::to_string(v) + " out of range");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return r;
}

}  // namespace

double consistency_score(const IncidenceMatrix& h, std::span<const Index> community_nodes) {
  if (community_nodes.empty()) fail(ErrorCode::EmptyCommunity, "community has no nodes");
  return score_with_mask(h, make_mask(h.n_nodes, community_nodes));
}

ConsistencyReport permutation_pvalue(std::span<const IncidenceMatrix> hypergraphs, const Cover& cover, Index n_perm,
                                     std::uint64_t seed, std::vector<std::string> observation_ids) {
  if (n_perm < 1) fail(ErrorCode::InvalidArgument, "need at least one permutation");
  if (hypergraphs.empty()) fail(ErrorCode::InvalidArgument, "need at least one hypergraph");
  const Index n = cover.n_nodes();
  for (const auto& h : hypergraphs)
    if (h.n_nodes != n) fail(ErrorCode::DimensionMismatch, "hypergraph and cover disagree on the node count");
  if (!observation_ids.empty() && observation_ids.size() != hypergraphs.size())
    fail(ErrorCode::DimensionMismatch, "one observation id per hypergraph");

  const auto communities = cover.communities();
  const auto k = static_cast<Index>(communities.size());
  const auto n_obs = static_cast<Index>(hypergraphs.size());

  ConsistencyReport rep;
  rep.n_permutations = n_perm;
  rep.seed = seed;
  rep.observations = std::move(observation_ids);
  if (rep.observations.empty())
    for (Index o = 0; o < n_obs; ++o) rep.observations.push_back(std::to_string(o));
  rep.q = Matrix::Zero(n_obs, k);
  rep.q_mean = rep.q_std = rep.q_random_mean = rep.q_random_std = rep.p_values = rep.z_scores = Vector::Zero(k);

  for (Index c = 0; c < k; ++c) {
    const auto& members = communities[static_cast<std::size_t>(c)];
    if (members.empty()) fail(ErrorCode::EmptyCommunity, "community " + std::to_string(c) + " is empty");
    rep.community_sizes.push_back(static_cast<Index>(members.size()));
    const auto mask = make_mask(n, members);
    std::vector<double> obs;
    for (Index o = 0; o < n_obs; ++o) {
      rep.q(o, c) = score_with_mask(hypergraphs[static_cast<std::size_t>(o)], mask);
      obs.push_back(rep.q(o, c));
    }
    const auto ms = mean_std(obs);
    rep.q_mean[c] = ms.mean;
    rep.q_std[c] = ms.std;
  }

  // perm_means(p, c): mean over observations of the null score.
  Matrix perm_means(n_perm, k);
  std::vector<std::vector<double>> null_all(static_cast<std::size_t>(k));
  std::vector<Index> nodes(static_cast<std::size_t>(n));
  std::vector<char> mask(static_cast<std::size_t>(n));
  for (Index p = 0; p < n_perm; ++p) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(p)));
    for (Index c = 0; c < k; ++c) {
      const auto size = rep.community_sizes[static_cast<std::size_t>(c)];
      std::iota(nodes.begin(), nodes.end(), Index{0});
      // partial Fisher-Yates: the first `size` slots are a uniform sample without replacement
      for (Index i = 0; i < size; ++i) {
        const auto j = i + static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
      }
      std::fill(mask.begin(), mask.end(), 0);
      for (Index i = 0; i < size; ++i) mask[static_cast<std::size_t>(nodes[static_cast<std::size_t>(i)])] = 1;
      double sum = 0.0;
      for (const auto& h : hypergraphs) {
        const double q = score_with_mask(h, mask);
        null_all[static_cast<std::size_t>(c)].push_back(q);
        sum += q;
      }
      perm_means(p, c) = sum / static_cast<double>(n_obs);
    }
  }

  for (Index c = 0; c < k; ++c) {
    const auto null_ms = mean_std(null_all[static_cast<std::size_t>(c)]);
    rep.q_random_mean[c] = null_ms.mean;
    rep.q_random_std[c] = null_ms.std;
    Index exceed = 0;
    std::vector<double> means(static_cast<std::size_t>(n_perm));
    for (Index p = 0; p < n_perm; ++p) {
      means[static_cast<std::size_t>(p)] = perm_means(p, c);
      if (perm_means(p, c) >= rep.q_mean[c]) ++exceed;
    }
    rep.p_values[c] = static_cast<double>(1 + exceed) / static_cast<double>(1 + n_perm);
    const auto pm = mean_std(means);
    rep.z_scores[c] = pm.std > 0.0 ? (rep.q_mean[c] - pm.mean) / pm.std : std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double set_f1(const std::vector<Index>& a, const std::vector<Index>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<Index> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<Index> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  return 2.0 * static_cast<double>(common.size()) / static_cast<double>(sa.size() + sb.size());
}

double overlapping_f1(const std::vector<std::vector<Index>>& detected, const std::vector<std::vector<Index>>& truth) {
  const std::size_t denom = std::max(detected.size(), truth.size());
  if (denom == 0) return 1.0;
  // Assignment by DP over subsets of the smaller side.
  const bool detected_small = detected.size() <= truth.size();
  const auto& small = detected_small ? detected : truth;
  const auto& large = detected_small ? truth : detected;
  const std::size_t s = small.size();
  if (s > 20) fail(ErrorCode::InvalidArgument, "too many communities for exact matching");
  std::vector<double> best(std::size_t{1} << s, -1.0);
  best[0] = 0.0;
  for (const auto& l : large) {
    auto next = best;
    for (std::size_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] < 0.0) continue;
      for (std::size_t i = 0; i < s; ++i) {
        if (mask & (std::size_t{1} << i)) continue;
        const auto m2 = mask | (std::size_t{1} << i);
        next[m2] = std::max(next[m2], best[mask] + set_f1(small[i], l));
      }
    }
    best = std::move(next);
  }
  const double total = *std::max_element(best.begin(), best.end());
  return total / static_cast<double>(denom);
}

}  // namespace hypercomm
