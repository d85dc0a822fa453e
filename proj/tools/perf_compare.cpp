// Timing comparison: heap-based grow_regions vs the serial linear-scan
// reference, and the OpenMP pass loop at 1 vs all threads.
#include <chrono>
#include <cstdio>

#include "rgr/bench.hpp"
#include "rgr/color.hpp"
#include "rgr/partition.hpp"
#include "rgr/reference.hpp"
#include "rgr/refine.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
    rgr::RefineConfig cfg;

    // Grower comparison on a small scene (the reference is O(n^2)).
    {
        const rgr::Scene scene = rgr::gen_scene({64, 64}, 7, rgr::SceneStyle::Ellipse);
        const rgr::ConfidenceMap m = rgr::degrade(scene.gt, 3.0, 1, -1, 0.05, 11);
        const rgr::LabImage lab = rgr::rgb_to_lab(scene.image);
        rgr::RegionPartition part = rgr::threshold_regions(m, cfg);
        part = rgr::thicken_uncertain(part, cfg.thicken_radius);
        part = rgr::compute_roi(part, cfg.roi_margin);
        rgr::Rng rng = rgr::derived_rng(1, 0);
        std::size_t domain = 0;
        for (rgr::RegionLabel l : part.labels)
            if (l == rgr::RegionLabel::Foreground || l == rgr::RegionLabel::NearBackground)
                ++domain;
        const auto seeds =
            rgr::sample_seeds(part, lab, rgr::seed_count(domain, cfg.seed_spacing), rng);

        auto t0 = Clock::now();
        const rgr::ClusterMap heap = rgr::grow_regions(lab, part, seeds, cfg);
        const double heap_ms = ms_since(t0);
        t0 = Clock::now();
        const rgr::ClusterMap ref = rgr::reference::grow_regions(lab, part, seeds, cfg);
        const double ref_ms = ms_since(t0);
        const bool match = heap.assignment == ref.assignment;
        std::printf("grow_regions 64x64: heap %.2f ms, reference %.2f ms, match=%s\n", heap_ms,
                    ref_ms, match ? "yes" : "NO");
        if (!match) return 1;
    }

    // Pass-loop scaling on a full-size scene.
    {
        const rgr::Scene scene = rgr::gen_scene({320, 240}, 42, rgr::SceneStyle::MultiBlob);
        const rgr::ConfidenceMap m = rgr::degrade(scene.gt, 8.0, 3, -2, 0.05, 99);
        const rgr::LabImage lab = rgr::rgb_to_lab(scene.image);

        auto t0 = Clock::now();
        const rgr::SegMask serial = rgr::rgr_refine_lab(lab, m, cfg, 1);
        const double serial_ms = ms_since(t0);
#ifdef _OPENMP
        const int nthreads = omp_get_max_threads();
#else
        const int nthreads = 1;
#endif
        t0 = Clock::now();
        const rgr::SegMask parallel = rgr::rgr_refine_lab(lab, m, cfg, nthreads);
        const double parallel_ms = ms_since(t0);
        const bool identical =
            serial.labels == parallel.labels && serial.avg_votes == parallel.avg_votes;
        std::printf("rgr_refine 320x240 n_s=%d: 1 thread %.1f ms, %d threads %.1f ms, identical=%s\n",
                    cfg.n_s, serial_ms, nthreads, parallel_ms, identical ? "yes" : "NO");
        if (!identical) return 1;
    }
    return 0;
}
