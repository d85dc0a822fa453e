#pragma once

#include "rgr/model.hpp"

namespace rgr {

// Split the confidence map into high confidence foreground (score >= tau_f),
// high confidence background (score <= tau_b) and the uncertain zone between.
RegionPartition threshold_regions(const ConfidenceMap& m, const RefineConfig& cfg);

// Relabel every Background pixel within Chebyshev distance `radius` of an
// Uncertain or Foreground pixel as Uncertain. radius 0 is the identity.
RegionPartition thicken_uncertain(const RegionPartition& p, int radius);

// Carve NearBackground out of Background: background pixels within Euclidean
// distance `margin` of the Uncertain set. The remaining Background is the far
// background, excluded from region growing.
RegionPartition compute_roi(const RegionPartition& p, double margin);

}  // namespace rgr
