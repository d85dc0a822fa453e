#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rgr/model.hpp"
#include "rgr/rng.hpp"

namespace rgr {

// Raised when the sampling domain (foreground u near-background) is empty.
struct NoHighConfidenceRegion : std::runtime_error {
    NoHighConfidenceRegion() : std::runtime_error("no high confidence pixels to seed from") {}
};

// Position + color feature of a pixel or running centroid in the joint 5-D space.
struct PixelFeature {
    double x = 0, y = 0;
    double l = 0, a = 0, b = 0;
};

// Joint spatial/color distance with per-component normalizers.
inline double snic_distance(const PixelFeature& px, const PixelFeature& centroid, double theta_s,
                            double theta_m) {
    const double dx = px.x - centroid.x, dy = px.y - centroid.y;
    const double dl = px.l - centroid.l, da = px.a - centroid.a, db = px.b - centroid.b;
    return std::sqrt((dx * dx + dy * dy) / theta_s + (dl * dl + da * da + db * db) / theta_m);
}

// Number of seeds for a sampling domain: max(1, round(area / spacing^2)).
std::size_t seed_count(std::size_t region_area, double spacing);

// Draw min(k, |R_H|) distinct seeds uniformly from the high confidence pixels
// (Foreground and NearBackground). Throws NoHighConfidenceRegion when empty.
std::vector<Seed> sample_seeds(const RegionPartition& p, const LabImage& lab, std::size_t k,
                               Rng& rng);

// One SNIC-style region growing pass over the RoI. Seeds found clusters; the
// priority queue pops by (distance, insertion order); pushes are capped at
// d_max; pixels never reached stay Orphan.
ClusterMap grow_regions(const LabImage& lab, const RegionPartition& p,
                        const std::vector<Seed>& seeds, const RefineConfig& cfg);

// Per-cluster foreground vote ratio |{p in cluster : M(p) > tau0}| / |cluster|,
// broadcast to every member pixel; orphans get 0.
std::vector<float> cluster_vote(const ClusterMap& clusters, const ConfidenceMap& m, double tau0);

// Full refinement pipeline: tri-region thresholding, thickening, RoI, then n_s
// Monte Carlo grow+vote passes averaged into the final mask (> 0.5 rule).
// threads > 0 caps the worker count for the pass loop; the result is identical
// for any thread count.
SegMask rgr_refine(const RgbImage& img, const ConfidenceMap& m, const RefineConfig& cfg,
                   int threads = 0);

// Same pipeline starting from a precomputed Lab image.
SegMask rgr_refine_lab(const LabImage& lab, const ConfidenceMap& m, const RefineConfig& cfg,
                       int threads = 0);

}  // namespace rgr
