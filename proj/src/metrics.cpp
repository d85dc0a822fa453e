#include "rgr/metrics.hpp"

#include <cmath>
#include <cstddef>

namespace rgr {

double iou(const SegMask& a, const SegMask& b) {
    if (!(a.size == b.size)) throw std::invalid_argument("iou: dimension mismatch");
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
        const bool pa = a.labels[i] != 0, pb = b.labels[i] != 0;
        inter += pa && pb;
        uni += pa || pb;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// A foreground pixel is boundary if any 4-neighbor is background or off-image.
std::vector<std::uint8_t> boundary_pixels(const SegMask& m) {
    const int w = m.size.width, h = m.size.height;
    std::vector<std::uint8_t> out(m.labels.size(), 0);
    auto fg = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h && m.labels[static_cast<std::size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!m.labels[static_cast<std::size_t>(y) * w + x]) continue;
            if (!fg(x - 1, y) || !fg(x + 1, y) || !fg(x, y - 1) || !fg(x, y + 1))
                out[static_cast<std::size_t>(y) * w + x] = 1;
        }
    return out;
}

// Pixels within Euclidean distance tol of any marked pixel.
std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& src, ImageSize size,
                                      double tol) {
    const int w = size.width, h = size.height;
    const int r = static_cast<int>(tol);
    std::vector<std::pair<int, int>> disk;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy <= tol * tol)
                disk.emplace_back(dx, dy);

    std::vector<std::uint8_t> out(src.size(), 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!src[static_cast<std::size_t>(y) * w + x]) continue;
            for (auto [dx, dy] : disk) {
                const int nx = x + dx, ny = y + dy;
                if (nx >= 0 && ny >= 0 && nx < w && ny < h)
                    out[static_cast<std::size_t>(ny) * w + nx] = 1;
            }
        }
    return out;
}

}  // namespace

double default_boundary_tol(ImageSize size) {
    const double diag = std::hypot(static_cast<double>(size.width), static_cast<double>(size.height));
    return std::ceil(0.008 * diag);
}

BoundaryScore boundary_f(const SegMask& pred, const SegMask& gt, double tol) {
    if (!(pred.size == gt.size)) throw std::invalid_argument("boundary_f: dimension mismatch");
    if (tol < 0) throw std::invalid_argument("boundary_f: tol >= 0");

    const std::vector<std::uint8_t> pb = boundary_pixels(pred);
    const std::vector<std::uint8_t> gb = boundary_pixels(gt);

    std::size_t np = 0, ng = 0;
    for (std::size_t i = 0; i < pb.size(); ++i) {
        np += pb[i];
        ng += gb[i];
    }
    BoundaryScore s;
    if (np == 0 && ng == 0) {
        s.precision = s.recall = s.f = 1.0;
        return s;
    }
    if (np == 0 || ng == 0) return s;  // all zero

    const std::vector<std::uint8_t> gb_dil = dilate_disk(gb, gt.size, tol);
    const std::vector<std::uint8_t> pb_dil = dilate_disk(pb, pred.size, tol);

    std::size_t p_hit = 0, g_hit = 0;
    for (std::size_t i = 0; i < pb.size(); ++i) {
        p_hit += pb[i] && gb_dil[i];
        g_hit += gb[i] && pb_dil[i];
    }
    s.precision = static_cast<double>(p_hit) / static_cast<double>(np);
    s.recall = static_cast<double>(g_hit) / static_cast<double>(ng);
    s.f = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
}

std::vector<PrPoint> pr_sweep(const std::vector<float>& scores, const SegMask& gt,
                              const std::vector<double>& thresholds) {
    if (scores.size() != gt.labels.size()) throw std::invalid_argument("pr_sweep: size mismatch");
    std::vector<PrPoint> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            const bool p = scores[i] > static_cast<float>(t);
            const bool g = gt.labels[i] != 0;
            tp += p && g;
            fp += p && !g;
            fn += !p && g;
        }
        PrPoint pt;
        pt.threshold = t;
        pt.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
        pt.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
        pt.iou = tp + fp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp + fn);
        out.push_back(pt);
    }
    return out;
}

}  // namespace rgr
