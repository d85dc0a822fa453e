#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rgr/model.hpp"

namespace rgr {

enum class SceneStyle { Ellipse, Polygon, MultiBlob };

struct Scene {
    RgbImage image;
    SegMask gt;
};

// Render a synthetic scene: one or more foreground shapes in colors well
// separated from the background pool (Lab distance >= 25 between pools),
// low-frequency background texture and per-pixel Gaussian color noise.
Scene gen_scene(ImageSize size, std::uint64_t seed, SceneStyle style);

// The color pools used by gen_scene, exposed so tests can check separation.
const std::vector<Rgb8>& scene_background_pool();
const std::vector<Rgb8>& scene_foreground_pool();

// Coarse-detector model: shift the gt indicator (edge clamped), blur with a
// truncated Gaussian, add iid Gaussian score noise, clamp to [0,1].
ConfidenceMap degrade(const SegMask& gt, double blur_sigma, int shift_x, int shift_y,
                      double noise_sigma, std::uint64_t seed);

struct DegradeParams {
    double blur_sigma = 8.0;
    int shift_range = 4;  // shift drawn uniformly from [-range, range]^2 per scene
    double noise_sigma = 0.05;
};

struct BenchRow {
    std::string method;
    int scene_id = 0;
    double iou = 0;
    double boundary_f = 0;
    double runtime_ms = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    double mean_iou(const std::string& method) const;
    double mean_boundary_f(const std::string& method) const;
    double mean_runtime_ms(const std::string& method) const;

    std::string to_json() const;
    std::string to_csv() const;
};

// Compare raw thresholding at tau0, superpixel voting and RGR on n_scenes
// generated scenes. Deterministic for a fixed seed; threads parallelizes over
// scenes without affecting the result.
BenchReport run_benchmark(int n_scenes, ImageSize size, const RefineConfig& cfg,
                          const DegradeParams& deg, std::uint64_t seed, int threads = 0);

}  // namespace rgr
