#pragma once

#include "hypercomm/community.hpp"
#include "hypercomm/ingest.hpp"
#include "hypercomm/types.hpp"

#include <cstdint>
#include <string>

namespace hypercomm {

struct SyntheticSpec {
  Index n_rois = 60;
  Index n_timepoints = 500;
  Cover planted;
  double signal_strength = 1.0;
  double noise_std = 0.2;
  double ar = 0.0;  // AR(1) coefficient of the latent signals, in [0, 1)
  Index n_subjects = 1;
  Index n_runs = 1;
  std::uint64_t seed = 0;
};

// Contiguous communities laid out along a chain, each adjacent pair sharing
// `overlap` nodes. Sizes differ by at most one.
Cover chain_cover(Index n_rois, Index n_communities, Index overlap);

void validate(const SyntheticSpec& spec);

// x_i = signal_strength * sum_{c : i in c} g_c + noise_std * eps_i.
// Latent signals g_c are unit variance and drawn once per subject (shared by
// that subject's runs); the noise is fresh for every (subject, run).
TimeSeriesMatrix generate_subject(const SyntheticSpec& spec, Index subject, Index run);

// "sub-01_run-1" style stem, zero-padded to the subject count.
std::string synthetic_stem(const SyntheticSpec& spec, Index subject, Index run);

}  // namespace hypercomm
