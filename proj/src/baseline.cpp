#include "rgr/baseline.hpp"

#include <cmath>
#include <limits>

#include "rgr/color.hpp"
#include "rgr/refine.hpp"

namespace rgr {

std::vector<Seed> grid_seeds(ImageSize size, std::size_t k, const LabImage& lab) {
    if (k < 1 || k > size.pixel_count())
        throw std::invalid_argument("grid_seeds: need 1 <= k <= pixel count");
    const double s = std::sqrt(static_cast<double>(size.pixel_count()) / static_cast<double>(k));
    auto nx = std::max<std::size_t>(1, static_cast<std::size_t>(size.width / s));
    auto ny = std::max<std::size_t>(1, static_cast<std::size_t>(size.height / s));
    while (nx * ny > k) (nx > ny ? nx : ny) -= 1;  // only reachable on extreme aspect ratios

    std::vector<Seed> seeds;
    seeds.reserve(nx * ny);
    for (std::size_t gy = 0; gy < ny; ++gy)
        for (std::size_t gx = 0; gx < nx; ++gx) {
            Seed seed;
            seed.x = std::min<int>(size.width - 1,
                                   static_cast<int>((gx + 0.5) * size.width / nx));
            seed.y = std::min<int>(size.height - 1,
                                   static_cast<int>((gy + 0.5) * size.height / ny));
            seed.centroid_color = lab.pixels[pixel_index(seed.x, seed.y, size)];
            seed.foreground = false;
            seeds.push_back(seed);
        }
    return seeds;
}

SegMask sppx_refine_lab(const LabImage& lab, const ConfidenceMap& m, std::size_t k, double tau0) {
    if (!(lab.size == m.size())) throw std::invalid_argument("sppx_refine: dimension mismatch");

    // Whole image participates; the uncapped distance makes this plain SNIC.
    RegionPartition all;
    all.size = lab.size;
    all.labels.assign(lab.pixels.size(), RegionLabel::Uncertain);

    RefineConfig cfg;
    cfg.tau0 = tau0;
    cfg.tau_f = std::min(1.0, std::max(tau0 * 1.5, tau0 + 1e-6));
    const double spacing = std::sqrt(static_cast<double>(lab.size.pixel_count()) /
                                     static_cast<double>(k));
    cfg.theta_s = std::max(1.0, spacing * spacing);
    cfg.d_max = std::numeric_limits<double>::infinity();

    const std::vector<Seed> seeds = grid_seeds(lab.size, k, lab);
    const ClusterMap clusters = grow_regions(lab, all, seeds, cfg);
    const std::vector<float> votes = cluster_vote(clusters, m, tau0);

    SegMask mask;
    mask.size = lab.size;
    mask.avg_votes = votes;
    mask.labels.resize(votes.size());
    for (std::size_t i = 0; i < votes.size(); ++i) mask.labels[i] = votes[i] > 0.5f ? 1 : 0;
    return mask;
}

SegMask sppx_refine(const RgbImage& img, const ConfidenceMap& m, std::size_t k, double tau0) {
    return sppx_refine_lab(rgb_to_lab(img), m, k, tau0);
}

}  // namespace rgr
