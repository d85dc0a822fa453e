#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgr {

struct ImageSize {
    int width = 0;
    int height = 0;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool operator==(const ImageSize&) const = default;
};

// Row-major linear index, y increasing downward.
inline std::size_t pixel_index(int x, int y, ImageSize size) {
    if (x < 0 || y < 0 || x >= size.width || y >= size.height)
        throw std::out_of_range("pixel_index: (" + std::to_string(x) + "," + std::to_string(y) +
                                ") outside " + std::to_string(size.width) + "x" +
                                std::to_string(size.height));
    return static_cast<std::size_t>(y) * size.width + x;
}

struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb8&) const = default;
};

struct Lab {
    float l = 0.f, a = 0.f, b = 0.f;
};

struct RgbImage {
    ImageSize size;
    std::vector<Rgb8> pixels;  // row-major, length width*height
};

struct LabImage {
    ImageSize size;
    std::vector<Lab> pixels;
};

// Per-pixel detection score in [0,1] for one detection.
class ConfidenceMap {
  public:
    ConfidenceMap() = default;

    // Rejects scores outside [0,1].
    ConfidenceMap(ImageSize size, std::vector<float> scores);

    // Clamps out-of-range scores into [0,1]; *clamped_count (if given) receives
    // the number of values that needed clamping. Real detector dumps contain
    // float slop like 1.0000001, so loaders use this instead of the throwing ctor.
    static ConfidenceMap clamped(ImageSize size, std::vector<float> scores,
                                 std::size_t* clamped_count = nullptr);

    ImageSize size() const { return size_; }
    const std::vector<float>& scores() const { return scores_; }
    float at(std::size_t i) const { return scores_[i]; }

  private:
    ImageSize size_;
    std::vector<float> scores_;
};

enum class RegionLabel : std::uint8_t {
    Background = 0,      // far background once compute_roi has run
    NearBackground = 1,  // background close enough to the uncertain zone to seed growth
    Uncertain = 2,
    Foreground = 3,
};

struct RegionPartition {
    ImageSize size;
    std::vector<RegionLabel> labels;

    bool in_roi(std::size_t i) const { return labels[i] != RegionLabel::Background; }
};

struct Seed {
    int x = 0;
    int y = 0;
    Lab centroid_color;
    bool foreground = false;
};

struct ClusterInfo {
    bool foreground_seed = false;
    int pixel_count = 0;
};

struct ClusterMap {
    static constexpr std::int32_t kOrphan = -1;

    ImageSize size;
    std::vector<std::int32_t> assignment;  // cluster id or kOrphan
    std::vector<ClusterInfo> clusters;
};

struct SegMask {
    ImageSize size;
    std::vector<std::uint8_t> labels;  // 1 = foreground
    std::vector<float> avg_votes;      // averaged vote map, labels <=> avg_votes > 0.5
};

struct RefineConfig {
    double tau0 = 0.4;   // detector operating threshold
    double tau_f = 0.6;  // high confidence foreground, 1.5 * tau0
    double tau_b = 0.0;  // high confidence background
    int n_s = 10;        // Monte Carlo passes
    double seed_spacing = 8.0;
    double theta_s = 64.0;   // spatial normalizer, seed_spacing^2
    double theta_m = 100.0;  // color normalizer, compactness^2
    double d_max = 2.0;
    int connectivity = 4;  // 4 or 8
    int thicken_radius = 5;
    double roi_margin = 16.0;  // 2 * seed_spacing
    std::uint64_t rng_seed = 1;

    void validate() const;
};

}  // namespace rgr
