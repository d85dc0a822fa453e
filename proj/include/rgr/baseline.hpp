#pragma once

#include "rgr/model.hpp"

#include <vector>

namespace rgr {

// Regular-grid superpixel seeds: spacing sqrt(w*h/k), one seed centered in
// each grid cell, clamped in-bounds. Deterministic.
std::vector<Seed> grid_seeds(ImageSize size, std::size_t k, const LabImage& lab);

// Superpixel-voting refinement: plain SNIC over the whole image (no distance
// cap, no orphans) followed by per-superpixel majority voting at tau0.
SegMask sppx_refine(const RgbImage& img, const ConfidenceMap& m, std::size_t k, double tau0);

SegMask sppx_refine_lab(const LabImage& lab, const ConfidenceMap& m, std::size_t k, double tau0);

}  // namespace rgr
