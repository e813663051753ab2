#include "hypercomm/synth.hpp"

#include "hypercomm/error.hpp"
#include "hypercomm/seed.hpp"

#include <cmath>
#include <cstdio>

namespace hypercomm {

Cover chain_cover(Index n_rois, Index n_communities, Index overlap) {
  if (n_communities < 1) fail(ErrorCode::InvalidArgument, "need at least one community");
  if (overlap < 0) fail(ErrorCode::InvalidArgument, "overlap must be nonnegative");
  const Index total = n_rois + (n_communities - 1) * overlap;
  const Index base = total / n_communities;
  const Index extra = total % n_communities;
  if (base <= 2 * overlap && n_communities > 1)
    fail(ErrorCode::InvalidArgument, "communities too small for the requested overlap");
  std::vector<std::vector<Index>> sets;
  Index start = 0;
  for (Index c = 0; c < n_communities; ++c) {
    const Index size = base + (c < extra ? 1 : 0);
    std::vector<Index> members;
    for (Index v = start; v < start + size; ++v) members.push_back(v);
    sets.push_back(std::move(members));
    start += size - overlap;
  }
  return Cover::from_communities(n_rois, sets);
}

void validate(const SyntheticSpec& spec) {
  if (spec.n_rois < 2 || spec.n_timepoints < 2) fail(ErrorCode::InvalidArgument, "need at least 2 ROIs and 2 time points");
  if (spec.planted.n_nodes() != spec.n_rois) fail(ErrorCode::DimensionMismatch, "planted cover has the wrong node count");
  for (Index c = 0; c < spec.planted.n_communities(); ++c)
    if (spec.planted.membership.col(c).cast<Index>().sum() == 0)
      fail(ErrorCode::InvalidArgument, "planted community " + std::to_string(c) + " is empty");
  for (Index i = 0; i < spec.n_rois; ++i)
    if (spec.planted.membership.row(i).cast<Index>().sum() == 0)
      fail(ErrorCode::InvalidArgument, "node " + std::to_string(i) + " is in no planted community");
  if (!(spec.signal_strength >= 0.0)) fail(ErrorCode::InvalidArgument, "signal_strength must be >= 0");
  if (!(spec.noise_std > 0.0)) fail(ErrorCode::InvalidArgument, "noise_std must be > 0");
  if (!(spec.ar >= 0.0 && spec.ar < 1.0)) fail(ErrorCode::InvalidArgument, "ar must be in [0, 1)");
  if (spec.n_subjects < 1 || spec.n_runs < 1) fail(ErrorCode::InvalidArgument, "need at least one subject and run");
}

namespace {

void fill_process(Rng& rng, double ar, Eigen::Ref<Vector> out) {
  NormalSampler normal;
  const double innovation = std::sqrt(1.0 - ar * ar);
  double prev = normal(rng);
  out[0] = prev;
  for (Index t = 1; t < out.size(); ++t) {
    prev = ar * prev + innovation * normal(rng);
    out[t] = prev;
  }
}

}  // namespace

std::string synthetic_stem(const SyntheticSpec& spec, Index subject, Index run) {
  const int width = static_cast<int>(std::to_string(spec.n_subjects).size()) < 2
                        ? 2
                        : static_cast<int>(std::to_string(spec.n_subjects).size());
  char buf[96];
  std::snprintf(buf, sizeof(buf), "sub-%0*lld_run-%lld", width, static_cast<long long>(subject + 1),
                static_cast<long long>(run + 1));
  return buf;
}

TimeSeriesMatrix generate_subject(const SyntheticSpec& spec, Index subject, Index run) {
  validate(spec);
  if (subject < 0 || subject >= spec.n_subjects || run < 0 || run >= spec.n_runs)
    fail(ErrorCode::Range, "subject or run index out of range");
  const Index n = spec.n_rois;
  const Index p = spec.n_timepoints;
  const Index k = spec.planted.n_communities();

  for (std::uint64_t attempt = 0;; ++attempt) {
    const auto subject_seed = derive_seed(derive_seed(spec.seed, "signal"), static_cast<std::uint64_t>(subject));
    Matrix latent(k, p);
    for (Index c = 0; c < k; ++c) {
      Rng rng(derive_seed(derive_seed(subject_seed, static_cast<std::uint64_t>(c)), attempt));
      Vector g(p);
      fill_process(rng, spec.ar, g);
      latent.row(c) = g.transpose();
    }
    Rng noise_rng(derive_seed(derive_seed(derive_seed(spec.seed, "noise"), static_cast<std::uint64_t>(subject)),
                              static_cast<std::uint64_t>(run) * 1000003ULL + attempt));
    NormalSampler normal;
    TimeSeriesMatrix ts;
    ts.data = Matrix::Zero(n, p);
    for (Index i = 0; i < n; ++i) {
      for (Index c = 0; c < k; ++c)
        if (spec.planted.membership(i, c)) ts.data.row(i) += spec.signal_strength * latent.row(c);
      for (Index t = 0; t < p; ++t) ts.data(i, t) += spec.noise_std * normal(noise_rng);
    }
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i) {
      const double mean = ts.data.row(i).mean();
      ok = (ts.data.row(i).array() - mean).matrix().norm() > 1e-12;
    }
    if (!ok) continue;
    const auto stem = synthetic_stem(spec, subject, run);
    parse_subject_run(stem, ts.subject_id, ts.run_id);
    return ts;
  }
}

}  // namespace hypercomm
