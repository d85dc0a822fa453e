#include "rgr/refine.hpp"

#include <algorithm>
#include <cstddef>
#include <queue>

#include "rgr/color.hpp"
#include "rgr/partition.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rgr {

std::size_t seed_count(std::size_t region_area, double spacing) {
    if (region_area < 1 || spacing < 1.0)
        throw std::invalid_argument("seed_count: area >= 1, spacing >= 1");
    const auto n = static_cast<std::size_t>(std::llround(region_area / (spacing * spacing)));
    return std::max<std::size_t>(1, n);
}

std::vector<Seed> sample_seeds(const RegionPartition& p, const LabImage& lab, std::size_t k,
                               Rng& rng) {
    std::vector<std::uint32_t> pool;
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        if (p.labels[i] == RegionLabel::Foreground || p.labels[i] == RegionLabel::NearBackground)
            pool.push_back(static_cast<std::uint32_t>(i));
    if (pool.empty()) throw NoHighConfidenceRegion();

    const std::size_t n = std::min(k, pool.size());
    std::vector<Seed> seeds;
    seeds.reserve(n);
    // Partial Fisher-Yates: the first n slots become the sample.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        const std::uint32_t idx = pool[i];
        Seed s;
        s.x = static_cast<int>(idx % p.size.width);
        s.y = static_cast<int>(idx / p.size.width);
        s.centroid_color = lab.pixels[idx];
        s.foreground = p.labels[idx] == RegionLabel::Foreground;
        seeds.push_back(s);
    }
    return seeds;
}

namespace {

struct GrowNode {
    double distance;
    std::uint64_t tiebreak;  // insertion counter, FIFO among equal distances
    std::uint32_t pixel;
    std::int32_t cluster;
};

struct NodeOrder {
    bool operator()(const GrowNode& a, const GrowNode& b) const {
        if (a.distance != b.distance) return a.distance > b.distance;
        return a.tiebreak > b.tiebreak;
    }
};

struct ClusterState {
    std::int64_t count = 0;
    double sx = 0, sy = 0, sl = 0, sa = 0, sb = 0;

    PixelFeature centroid() const {
        const double inv = 1.0 / static_cast<double>(count);
        return {sx * inv, sy * inv, sl * inv, sa * inv, sb * inv};
    }
};

// Fixed neighbor order; the oracle in the test suite replays the same order.
constexpr int kNeighborDx[8] = {0, 0, -1, 1, -1, 1, -1, 1};
constexpr int kNeighborDy[8] = {-1, 1, 0, 0, -1, -1, 1, 1};

}  // namespace

ClusterMap grow_regions(const LabImage& lab, const RegionPartition& p,
                        const std::vector<Seed>& seeds, const RefineConfig& cfg) {
    if (seeds.empty()) throw std::invalid_argument("grow_regions: no seeds");
    const int w = p.size.width, h = p.size.height;

    ClusterMap out;
    out.size = p.size;
    out.assignment.assign(p.labels.size(), ClusterMap::kOrphan);
    out.clusters.resize(seeds.size());

    std::vector<ClusterState> state(seeds.size());
    std::priority_queue<GrowNode, std::vector<GrowNode>, NodeOrder> queue;
    std::uint64_t counter = 0;

    for (std::size_t k = 0; k < seeds.size(); ++k) {
        const Seed& s = seeds[k];
        const std::size_t idx = pixel_index(s.x, s.y, p.size);
        if (!p.in_roi(idx)) throw std::invalid_argument("grow_regions: seed outside RoI");
        out.clusters[k].foreground_seed = s.foreground;
        queue.push({0.0, counter++, static_cast<std::uint32_t>(idx), static_cast<std::int32_t>(k)});
    }

    const int nneigh = cfg.connectivity == 8 ? 8 : 4;
    while (!queue.empty()) {
        const GrowNode node = queue.top();
        queue.pop();
        if (out.assignment[node.pixel] != ClusterMap::kOrphan) continue;  // stale entry

        out.assignment[node.pixel] = node.cluster;
        ClusterState& cs = state[node.cluster];
        const int px = static_cast<int>(node.pixel % w);
        const int py = static_cast<int>(node.pixel / w);
        const Lab& pc = lab.pixels[node.pixel];
        cs.count += 1;
        cs.sx += px;
        cs.sy += py;
        cs.sl += pc.l;
        cs.sa += pc.a;
        cs.sb += pc.b;
        out.clusters[node.cluster].pixel_count = static_cast<int>(cs.count);

        const PixelFeature centroid = cs.centroid();
        for (int i = 0; i < nneigh; ++i) {
            const int nx = px + kNeighborDx[i], ny = py + kNeighborDy[i];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (!p.in_roi(nidx) || out.assignment[nidx] != ClusterMap::kOrphan) continue;
            const Lab& nc = lab.pixels[nidx];
            const PixelFeature f{static_cast<double>(nx), static_cast<double>(ny), nc.l, nc.a, nc.b};
            const double d = snic_distance(f, centroid, cfg.theta_s, cfg.theta_m);
            if (d < cfg.d_max)
                queue.push({d, counter++, static_cast<std::uint32_t>(nidx), node.cluster});
        }
    }
    return out;
}

std::vector<float> cluster_vote(const ClusterMap& clusters, const ConfidenceMap& m, double tau0) {
    if (!(clusters.size == m.size()))
        throw std::invalid_argument("cluster_vote: dimension mismatch");
    std::vector<std::int64_t> positive(clusters.clusters.size(), 0);
    std::vector<std::int64_t> total(clusters.clusters.size(), 0);
    const float t0 = static_cast<float>(tau0);
    for (std::size_t i = 0; i < clusters.assignment.size(); ++i) {
        const std::int32_t k = clusters.assignment[i];
        if (k == ClusterMap::kOrphan) continue;
        ++total[k];
        if (m.at(i) > t0) ++positive[k];
    }
    std::vector<float> ratio(clusters.clusters.size(), 0.f);
    for (std::size_t k = 0; k < ratio.size(); ++k)
        if (total[k] > 0)
            ratio[k] = static_cast<float>(static_cast<double>(positive[k]) / total[k]);

    std::vector<float> votes(clusters.assignment.size(), 0.f);
    for (std::size_t i = 0; i < votes.size(); ++i) {
        const std::int32_t k = clusters.assignment[i];
        votes[i] = k == ClusterMap::kOrphan ? 0.f : ratio[k];
    }
    return votes;
}

SegMask rgr_refine_lab(const LabImage& lab, const ConfidenceMap& m, const RefineConfig& cfg,
                       int threads) {
    cfg.validate();
    if (!(lab.size == m.size())) throw std::invalid_argument("rgr_refine: dimension mismatch");

    SegMask mask;
    mask.size = m.size();
    mask.labels.assign(m.scores().size(), 0);
    mask.avg_votes.assign(m.scores().size(), 0.f);

    RegionPartition part = threshold_regions(m, cfg);
    part = thicken_uncertain(part, cfg.thicken_radius);
    part = compute_roi(part, cfg.roi_margin);

    // No foreground evidence at all: the refined mask is empty.
    const bool any_fg = std::any_of(part.labels.begin(), part.labels.end(),
                                    [](RegionLabel l) { return l == RegionLabel::Foreground; });
    if (!any_fg) return mask;

    std::size_t domain = 0;
    for (RegionLabel l : part.labels)
        if (l == RegionLabel::Foreground || l == RegionLabel::NearBackground) ++domain;
    const std::size_t k = seed_count(domain, cfg.seed_spacing);

    // Passes are independent; the reduction below runs in pass order so the
    // output is bit-identical for any worker count.
    std::vector<std::vector<float>> pass_votes(cfg.n_s);
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    const int nthreads = 1;
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (int pass = 0; pass < cfg.n_s; ++pass) {
        Rng rng = derived_rng(cfg.rng_seed, static_cast<std::uint64_t>(pass));
        const std::vector<Seed> seeds = sample_seeds(part, lab, k, rng);
        const ClusterMap clusters = grow_regions(lab, part, seeds, cfg);
        pass_votes[pass] = cluster_vote(clusters, m, cfg.tau0);
    }

    std::vector<double> sum(m.scores().size(), 0.0);
    for (int pass = 0; pass < cfg.n_s; ++pass)
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += pass_votes[pass][i];
    for (std::size_t i = 0; i < sum.size(); ++i) {
        mask.avg_votes[i] = static_cast<float>(sum[i] / cfg.n_s);
        mask.labels[i] = mask.avg_votes[i] > 0.5f ? 1 : 0;
    }
    return mask;
}

SegMask rgr_refine(const RgbImage& img, const ConfidenceMap& m, const RefineConfig& cfg,
                   int threads) {
    return rgr_refine_lab(rgb_to_lab(img), m, cfg, threads);
}

}  // namespace rgr
