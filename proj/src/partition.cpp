#include "rgr/partition.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace rgr {

RegionPartition threshold_regions(const ConfidenceMap& m, const RefineConfig& cfg) {
    cfg.validate();
    RegionPartition p;
    p.size = m.size();
    p.labels.resize(m.scores().size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.labels.size());
    const float tau_f = static_cast<float>(cfg.tau_f);
    const float tau_b = static_cast<float>(cfg.tau_b);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const float s = m.at(i);
        // Ties go to the confident classes so the partition is total.
        p.labels[i] = s >= tau_f   ? RegionLabel::Foreground
                      : s <= tau_b ? RegionLabel::Background
                                   : RegionLabel::Uncertain;
    }
    return p;
}

namespace {

// Exact Chebyshev distance transform: two chamfer passes over the 8-neighborhood.
std::vector<int> chebyshev_distance(const RegionPartition& p, bool (*is_source)(RegionLabel)) {
    const int w = p.size.width, h = p.size.height;
    const int inf = std::numeric_limits<int>::max() / 2;
    std::vector<int> d(p.labels.size(), inf);
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        if (is_source(p.labels[i])) d[i] = 0;

    auto at = [&](int x, int y) -> int& { return d[static_cast<std::size_t>(y) * w + x]; };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int v = at(x, y);
            if (x > 0) v = std::min(v, at(x - 1, y) + 1);
            if (y > 0) {
                v = std::min(v, at(x, y - 1) + 1);
                if (x > 0) v = std::min(v, at(x - 1, y - 1) + 1);
                if (x + 1 < w) v = std::min(v, at(x + 1, y - 1) + 1);
            }
            at(x, y) = v;
        }
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) {
            int v = at(x, y);
            if (x + 1 < w) v = std::min(v, at(x + 1, y) + 1);
            if (y + 1 < h) {
                v = std::min(v, at(x, y + 1) + 1);
                if (x + 1 < w) v = std::min(v, at(x + 1, y + 1) + 1);
                if (x > 0) v = std::min(v, at(x - 1, y + 1) + 1);
            }
            at(x, y) = v;
        }
    return d;
}

}  // namespace

RegionPartition thicken_uncertain(const RegionPartition& p, int radius) {
    if (radius < 0) throw std::invalid_argument("thicken_uncertain: radius >= 0");
    if (radius == 0) return p;

    const std::vector<int> dist = chebyshev_distance(
        p, +[](RegionLabel l) { return l == RegionLabel::Uncertain || l == RegionLabel::Foreground; });

    RegionPartition out = p;
    for (std::size_t i = 0; i < out.labels.size(); ++i)
        if (out.labels[i] == RegionLabel::Background && dist[i] <= radius)
            out.labels[i] = RegionLabel::Uncertain;
    return out;
}

RegionPartition compute_roi(const RegionPartition& p, double margin) {
    if (margin < 0) throw std::invalid_argument("compute_roi: margin >= 0");
    RegionPartition out = p;
    if (margin == 0) return out;

    const int w = p.size.width, h = p.size.height;
    const int r = static_cast<int>(margin);

    // Disk offsets within the Euclidean margin.
    std::vector<std::pair<int, int>> disk;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy <= margin * margin)
                disk.emplace_back(dx, dy);

    // The nearest Uncertain pixel to any outside query lies on the boundary of
    // the Uncertain set, so stamping the disk from boundary pixels is exact.
    auto label_at = [&](int x, int y) { return p.labels[static_cast<std::size_t>(y) * w + x]; };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (label_at(x, y) != RegionLabel::Uncertain) continue;
            bool boundary = false;
            for (int dy = -1; dy <= 1 && !boundary; ++dy)
                for (int dx = -1; dx <= 1 && !boundary; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    if (label_at(nx, ny) != RegionLabel::Uncertain) boundary = true;
                }
            if (!boundary) continue;
            for (auto [dx, dy] : disk) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                RegionLabel& lbl = out.labels[static_cast<std::size_t>(ny) * w + nx];
                if (lbl == RegionLabel::Background) lbl = RegionLabel::NearBackground;
            }
        }
    return out;
}

}  // namespace rgr
