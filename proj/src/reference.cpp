#include "rgr/reference.hpp"

#include <vector>

namespace rgr::reference {

namespace {

struct Node {
    double distance;
    std::uint64_t tiebreak;
    std::uint32_t pixel;
    std::int32_t cluster;
};

struct ClusterState {
    std::int64_t count = 0;
    double sx = 0, sy = 0, sl = 0, sa = 0, sb = 0;
};

constexpr int kNeighborDx[8] = {0, 0, -1, 1, -1, 1, -1, 1};
constexpr int kNeighborDy[8] = {-1, 1, 0, 0, -1, -1, 1, 1};

}  // namespace

ClusterMap grow_regions(const LabImage& lab, const RegionPartition& p,
                        const std::vector<Seed>& seeds, const RefineConfig& cfg) {
    if (seeds.empty()) throw std::invalid_argument("reference::grow_regions: no seeds");
    const int w = p.size.width, h = p.size.height;

    ClusterMap out;
    out.size = p.size;
    out.assignment.assign(p.labels.size(), ClusterMap::kOrphan);
    out.clusters.resize(seeds.size());

    std::vector<ClusterState> state(seeds.size());
    std::vector<Node> open;
    std::uint64_t counter = 0;

    for (std::size_t k = 0; k < seeds.size(); ++k) {
        const Seed& s = seeds[k];
        const std::size_t idx = pixel_index(s.x, s.y, p.size);
        if (!p.in_roi(idx)) throw std::invalid_argument("reference::grow_regions: seed outside RoI");
        out.clusters[k].foreground_seed = s.foreground;
        open.push_back({0.0, counter++, static_cast<std::uint32_t>(idx), static_cast<std::int32_t>(k)});
    }

    const int nneigh = cfg.connectivity == 8 ? 8 : 4;
    while (!open.empty()) {
        // Linear scan for the minimum under (distance, insertion order).
        std::size_t best = 0;
        for (std::size_t i = 1; i < open.size(); ++i) {
            if (open[i].distance < open[best].distance ||
                (open[i].distance == open[best].distance && open[i].tiebreak < open[best].tiebreak))
                best = i;
        }
        const Node node = open[best];
        open[best] = open.back();
        open.pop_back();
        if (out.assignment[node.pixel] != ClusterMap::kOrphan) continue;

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

        const double inv = 1.0 / static_cast<double>(cs.count);
        const PixelFeature centroid{cs.sx * inv, cs.sy * inv, cs.sl * inv, cs.sa * inv, cs.sb * inv};
        for (int i = 0; i < nneigh; ++i) {
            const int nx = px + kNeighborDx[i], ny = py + kNeighborDy[i];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (!p.in_roi(nidx) || out.assignment[nidx] != ClusterMap::kOrphan) continue;
            const Lab& nc = lab.pixels[nidx];
            const PixelFeature f{static_cast<double>(nx), static_cast<double>(ny), nc.l, nc.a, nc.b};
            const double d = snic_distance(f, centroid, cfg.theta_s, cfg.theta_m);
            if (d < cfg.d_max)
                open.push_back({d, counter++, static_cast<std::uint32_t>(nidx), node.cluster});
        }
    }
    return out;
}

}  // namespace rgr::reference
