#include "rgr/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rgr/baseline.hpp"
#include "rgr/color.hpp"
#include "rgr/metrics.hpp"
#include "rgr/refine.hpp"
#include "rgr/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rgr {

namespace {

// Pools verified well separated in Lab (pairwise fg/bg distance >= 25).
const std::vector<Rgb8> kBackgroundPool = {
    {34, 110, 40},    // green
    {120, 118, 100},  // khaki gray
    {70, 90, 110},    // slate
    {150, 140, 125},  // sand
};
const std::vector<Rgb8> kForegroundPool = {
    {210, 30, 50},   // red
    {245, 140, 20},  // orange
    {40, 60, 200},   // blue
    {200, 40, 180},  // magenta
};

struct Ellipse {
    double cx, cy, a, b, cos_t, sin_t;

    bool contains(double x, double y) const {
        const double dx = x - cx, dy = y - cy;
        const double u = cos_t * dx + sin_t * dy;
        const double v = -sin_t * dx + cos_t * dy;
        return (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
    }
};

Ellipse random_ellipse(Rng& rng, ImageSize size, double min_frac, double max_frac) {
    const double m = std::min(size.width, size.height);
    Ellipse e;
    e.cx = (0.3 + 0.4 * rng.next_double()) * size.width;
    e.cy = (0.3 + 0.4 * rng.next_double()) * size.height;
    e.a = (min_frac + (max_frac - min_frac) * rng.next_double()) * m;
    e.b = (min_frac + (max_frac - min_frac) * rng.next_double()) * m;
    const double t = rng.next_double() * 3.141592653589793;
    e.cos_t = std::cos(t);
    e.sin_t = std::sin(t);
    return e;
}

std::vector<std::pair<double, double>> random_convex_polygon(Rng& rng, ImageSize size) {
    const int n = 5 + static_cast<int>(rng.below(5));
    const double m = std::min(size.width, size.height);
    const double cx = (0.35 + 0.3 * rng.next_double()) * size.width;
    const double cy = (0.35 + 0.3 * rng.next_double()) * size.height;
    std::vector<double> angles(n);
    for (double& a : angles) a = rng.next_double() * 6.283185307179586;
    std::sort(angles.begin(), angles.end());
    std::vector<std::pair<double, double>> verts;
    verts.reserve(n);
    for (double a : angles) {
        const double r = (0.18 + 0.17 * rng.next_double()) * m;
        verts.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
    }
    return verts;
}

bool in_convex_polygon(const std::vector<std::pair<double, double>>& v, double x, double y) {
    // Vertices are angle-sorted (counterclockwise), so all cross products agree inside.
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& [x0, y0] = v[i];
        const auto& [x1, y1] = v[(i + 1) % v.size()];
        if ((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) < 0) return false;
    }
    return true;
}

std::uint8_t clamp8(double v) {
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

}  // namespace

const std::vector<Rgb8>& scene_background_pool() { return kBackgroundPool; }
const std::vector<Rgb8>& scene_foreground_pool() { return kForegroundPool; }

Scene gen_scene(ImageSize size, std::uint64_t seed, SceneStyle style) {
    if (size.width < 32 || size.height < 32)
        throw std::invalid_argument("gen_scene: minimum size is 32x32");
    Rng rng(seed);
    const int w = size.width, h = size.height;

    const Rgb8 bg = kBackgroundPool[rng.below(kBackgroundPool.size())];

    // Blob membership test per style; each blob carries its own foreground color.
    std::vector<Ellipse> ellipses;
    std::vector<std::pair<double, double>> poly;
    int n_blobs = 1;
    if (style == SceneStyle::Ellipse) {
        ellipses.push_back(random_ellipse(rng, size, 0.18, 0.35));
    } else if (style == SceneStyle::Polygon) {
        poly = random_convex_polygon(rng, size);
    } else {
        n_blobs = 2 + static_cast<int>(rng.below(3));
        for (int i = 0; i < n_blobs; ++i) ellipses.push_back(random_ellipse(rng, size, 0.08, 0.18));
    }
    std::vector<Rgb8> blob_colors;
    for (int i = 0; i < n_blobs; ++i)
        blob_colors.push_back(kForegroundPool[rng.below(kForegroundPool.size())]);

    // Low-frequency background texture: coarse grid of channel offsets,
    // bilinearly upsampled.
    const int cell = 40;
    const int gx = w / cell + 2, gy = h / cell + 2;
    std::vector<double> grid(static_cast<std::size_t>(gx) * gy * 3);
    for (double& g : grid) g = (rng.next_double() * 2 - 1) * 12.0;
    auto texture = [&](int x, int y, int c) {
        const double fx = static_cast<double>(x) / cell, fy = static_cast<double>(y) / cell;
        const int x0 = static_cast<int>(fx), y0 = static_cast<int>(fy);
        const double tx = fx - x0, ty = fy - y0;
        auto g = [&](int xi, int yi) { return grid[(static_cast<std::size_t>(yi) * gx + xi) * 3 + c]; };
        return (1 - tx) * (1 - ty) * g(x0, y0) + tx * (1 - ty) * g(x0 + 1, y0) +
               (1 - tx) * ty * g(x0, y0 + 1) + tx * ty * g(x0 + 1, y0 + 1);
    };

    Scene scene;
    scene.image.size = size;
    scene.image.pixels.resize(size.pixel_count());
    scene.gt.size = size;
    scene.gt.labels.resize(size.pixel_count());
    scene.gt.avg_votes.resize(size.pixel_count());

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            int blob = -1;
            if (style == SceneStyle::Polygon) {
                if (in_convex_polygon(poly, x, y)) blob = 0;
            } else {
                for (std::size_t e = 0; e < ellipses.size(); ++e)
                    if (ellipses[e].contains(x, y)) {
                        blob = static_cast<int>(e);
                        break;
                    }
            }
            const bool fg = blob >= 0;
            scene.gt.labels[i] = fg ? 1 : 0;
            scene.gt.avg_votes[i] = fg ? 1.f : 0.f;

            const Rgb8 base = fg ? blob_colors[blob] : bg;
            const double noise_sigma = 4.0;
            double r = base.r + noise_sigma * rng.next_normal();
            double g = base.g + noise_sigma * rng.next_normal();
            double b = base.b + noise_sigma * rng.next_normal();
            if (!fg) {
                r += texture(x, y, 0);
                g += texture(x, y, 1);
                b += texture(x, y, 2);
            }
            scene.image.pixels[i] = {clamp8(r), clamp8(g), clamp8(b)};
        }
    return scene;
}

ConfidenceMap degrade(const SegMask& gt, double blur_sigma, int shift_x, int shift_y,
                      double noise_sigma, std::uint64_t seed) {
    if (blur_sigma < 0) throw std::invalid_argument("degrade: blur_sigma >= 0");
    const int w = gt.size.width, h = gt.size.height;
    std::vector<double> buf(gt.labels.size());

    // Shift with edge clamping.
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int sx = std::clamp(x - shift_x, 0, w - 1);
            const int sy = std::clamp(y - shift_y, 0, h - 1);
            buf[static_cast<std::size_t>(y) * w + x] =
                gt.labels[static_cast<std::size_t>(sy) * w + sx] ? 1.0 : 0.0;
        }

    if (blur_sigma > 0) {
        const int r = static_cast<int>(std::ceil(3 * blur_sigma));
        std::vector<double> kernel(2 * r + 1);
        double sum = 0;
        for (int i = -r; i <= r; ++i) {
            kernel[i + r] = std::exp(-0.5 * i * i / (blur_sigma * blur_sigma));
            sum += kernel[i + r];
        }
        for (double& k : kernel) k /= sum;

        std::vector<double> tmp(buf.size());
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0;
                for (int i = -r; i <= r; ++i)
                    acc += kernel[i + r] * buf[static_cast<std::size_t>(y) * w +
                                               std::clamp(x + i, 0, w - 1)];
                tmp[static_cast<std::size_t>(y) * w + x] = acc;
            }
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0;
                for (int i = -r; i <= r; ++i)
                    acc += kernel[i + r] *
                           tmp[static_cast<std::size_t>(std::clamp(y + i, 0, h - 1)) * w + x];
                buf[static_cast<std::size_t>(y) * w + x] = acc;
            }
    }

    Rng rng(seed);
    std::vector<float> scores(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) {
        double v = buf[i];
        if (noise_sigma > 0) v += noise_sigma * rng.next_normal();
        scores[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
    return ConfidenceMap({w, h}, std::move(scores));
}

double BenchReport::mean_iou(const std::string& method) const {
    double s = 0;
    int n = 0;
    for (const BenchRow& r : rows)
        if (r.method == method) {
            s += r.iou;
            ++n;
        }
    return n ? s / n : 0;
}

double BenchReport::mean_boundary_f(const std::string& method) const {
    double s = 0;
    int n = 0;
    for (const BenchRow& r : rows)
        if (r.method == method) {
            s += r.boundary_f;
            ++n;
        }
    return n ? s / n : 0;
}

double BenchReport::mean_runtime_ms(const std::string& method) const {
    double s = 0;
    int n = 0;
    for (const BenchRow& r : rows)
        if (r.method == method) {
            s += r.runtime_ms;
            ++n;
        }
    return n ? s / n : 0;
}

std::string BenchReport::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const BenchRow& r : rows) {
        arr.push_back({{"method", r.method},
                       {"scene_id", r.scene_id},
                       {"iou", r.iou},
                       {"boundary_f", r.boundary_f},
                       {"runtime_ms", r.runtime_ms}});
    }
    return arr.dump(2);
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "method,scene_id,iou,boundary_f,runtime_ms\n";
    for (const BenchRow& r : rows)
        out << r.method << "," << r.scene_id << "," << r.iou << "," << r.boundary_f << ","
            << r.runtime_ms << "\n";
    return out.str();
}

BenchReport run_benchmark(int n_scenes, ImageSize size, const RefineConfig& cfg,
                          const DegradeParams& deg, std::uint64_t seed, int threads) {
    if (n_scenes < 1) throw std::invalid_argument("run_benchmark: n_scenes >= 1");
    cfg.validate();
    const double tol = default_boundary_tol(size);
    const auto k_sppx = static_cast<std::size_t>(std::max<double>(
        1, std::llround(size.pixel_count() / (cfg.seed_spacing * cfg.seed_spacing))));

    std::vector<std::array<BenchRow, 3>> per_scene(n_scenes);
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    const int nthreads = 1;
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (int s = 0; s < n_scenes; ++s) {
        const SceneStyle style = static_cast<SceneStyle>(s % 3);
        const Scene scene = gen_scene(size, derived_rng(seed, 3 * s).next_u64(), style);
        Rng shift_rng = derived_rng(seed, 3 * s + 1);
        const int dx = static_cast<int>(shift_rng.below(2 * deg.shift_range + 1)) - deg.shift_range;
        const int dy = static_cast<int>(shift_rng.below(2 * deg.shift_range + 1)) - deg.shift_range;
        const ConfidenceMap m = degrade(scene.gt, deg.blur_sigma, dx, dy, deg.noise_sigma,
                                        derived_rng(seed, 3 * s + 2).next_u64());
        const LabImage lab = rgb_to_lab(scene.image);

        auto timed = [&](auto&& fn) {
            const auto t0 = std::chrono::steady_clock::now();
            SegMask mask = fn();
            const auto t1 = std::chrono::steady_clock::now();
            return std::pair<SegMask, double>(
                std::move(mask), std::chrono::duration<double, std::milli>(t1 - t0).count());
        };
        auto score = [&](const std::string& method, const SegMask& mask, double ms) {
            BenchRow row;
            row.method = method;
            row.scene_id = s;
            row.iou = iou(mask, scene.gt);
            row.boundary_f = boundary_f(mask, scene.gt, tol).f;
            row.runtime_ms = ms;
            return row;
        };

        auto [raw, raw_ms] = timed([&] {
            SegMask mask;
            mask.size = size;
            mask.labels.resize(m.scores().size());
            mask.avg_votes.resize(m.scores().size());
            for (std::size_t i = 0; i < mask.labels.size(); ++i) {
                mask.labels[i] = m.at(i) > static_cast<float>(cfg.tau0) ? 1 : 0;
                mask.avg_votes[i] = mask.labels[i] ? 1.f : 0.f;
            }
            return mask;
        });
        auto [sppx, sppx_ms] = timed([&] { return sppx_refine_lab(lab, m, k_sppx, cfg.tau0); });
        auto [rgrm, rgr_ms] = timed([&] {
            RefineConfig c = cfg;
            c.rng_seed = derived_rng(seed, 3 * s + 2).next_u64() ^ cfg.rng_seed;
            return rgr_refine_lab(lab, m, c, /*threads=*/1);
        });

        per_scene[s] = {score("raw", raw, raw_ms), score("sppx", sppx, sppx_ms),
                        score("rgr", rgrm, rgr_ms)};
    }

    BenchReport report;
    for (const auto& rows : per_scene)
        for (const BenchRow& r : rows) report.rows.push_back(r);
    return report;
}

}  // namespace rgr
