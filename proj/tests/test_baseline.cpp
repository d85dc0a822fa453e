#include <doctest.h>

#include <set>
#include <tuple>

#include "rgr/baseline.hpp"
#include "rgr/color.hpp"
#include "rgr/refine.hpp"
#include "rgr/rng.hpp"

using namespace rgr;

namespace {

LabImage uniform_lab(ImageSize size) {
    LabImage img;
    img.size = size;
    img.pixels.assign(size.pixel_count(), Lab{50, 0, 0});
    return img;
}

}  // namespace

TEST_CASE("grid_seeds regular grid placement") {
    const ImageSize size{16, 16};
    const LabImage lab = uniform_lab(size);

    const auto four = grid_seeds(size, 4, lab);
    REQUIRE(four.size() == 4);
    std::set<std::pair<int, int>> pos;
    for (const Seed& s : four) pos.insert({s.x, s.y});
    CHECK(pos == std::set<std::pair<int, int>>{{4, 4}, {12, 4}, {4, 12}, {12, 12}});

    const auto one = grid_seeds(size, 1, lab);
    REQUIRE(one.size() == 1);
    CHECK(one[0].x == 8);
    CHECK(one[0].y == 8);

    const auto all = grid_seeds(size, 256, lab);
    REQUIRE(all.size() == 256);
    std::set<std::pair<int, int>> allpos;
    for (const Seed& s : all) allpos.insert({s.x, s.y});
    CHECK(allpos.size() == 256);  // one per pixel
}

TEST_CASE("grid_seeds count never exceeds k") {
    const std::tuple<int, int, int> cases[] = {{20, 15, 7}, {33, 9, 12}, {10, 100, 5}, {64, 64, 50}};
    for (auto [w, h, k] : cases) {
        const LabImage lab = uniform_lab({w, h});
        CHECK(grid_seeds({w, h}, k, lab).size() <= static_cast<std::size_t>(k));
        CHECK(!grid_seeds({w, h}, k, lab).empty());
    }
}

TEST_CASE("sppx_refine covers every pixel with a superpixel") {
    Rng rng(12);
    const ImageSize size{40, 32};
    RgbImage img;
    img.size = size;
    img.pixels.resize(size.pixel_count());
    std::vector<float> scores(size.pixel_count());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        img.pixels[i] = {static_cast<std::uint8_t>(rng.below(256)),
                         static_cast<std::uint8_t>(rng.below(256)),
                         static_cast<std::uint8_t>(rng.below(256))};
        scores[i] = static_cast<float>(rng.next_double());
    }
    const SegMask mask = sppx_refine(img, ConfidenceMap(size, scores), 20, 0.4);
    // No orphans: every pixel carries a vote ratio from its superpixel, and
    // the mask is consistent with the >0.5 rule.
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        CHECK(mask.avg_votes[i] >= 0.f);
        CHECK(mask.avg_votes[i] <= 1.f);
        CHECK((mask.labels[i] != 0) == (mask.avg_votes[i] > 0.5f));
    }
}

TEST_CASE("sppx superpixels are 4-connected under 4-connectivity growth") {
    Rng rng(77);
    const ImageSize size{24, 24};
    LabImage lab;
    lab.size = size;
    lab.pixels.resize(size.pixel_count());
    for (Lab& p : lab.pixels)
        p = {static_cast<float>(rng.next_double() * 100), static_cast<float>(rng.next_double() * 20),
             static_cast<float>(rng.next_double() * 20)};

    // Reuse the baseline pipeline then check connectivity of each label region.
    std::vector<float> scores(size.pixel_count(), 0.f);
    const SegMask mask = sppx_refine_lab(lab, ConfidenceMap(size, scores), 9, 0.4);
    (void)mask;  // vote map exercised above; connectivity checked via grow output below

    RegionPartition all{size, std::vector<RegionLabel>(size.pixel_count(), RegionLabel::Uncertain)};
    RefineConfig cfg;
    cfg.d_max = std::numeric_limits<double>::infinity();
    const auto seeds = grid_seeds(size, 9, lab);
    const ClusterMap cm = grow_regions(lab, all, seeds, cfg);
    CHECK(cm.clusters.size() <= 9);

    for (std::size_t k = 0; k < cm.clusters.size(); ++k) {
        // Flood fill from the first member; all members must be reachable.
        std::size_t start = cm.assignment.size();
        for (std::size_t i = 0; i < cm.assignment.size(); ++i)
            if (cm.assignment[i] == static_cast<std::int32_t>(k)) {
                start = i;
                break;
            }
        REQUIRE(start < cm.assignment.size());
        std::vector<bool> visited(cm.assignment.size(), false);
        std::vector<std::size_t> stack{start};
        visited[start] = true;
        std::size_t n = 0;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            ++n;
            const int x = static_cast<int>(i % size.width), y = static_cast<int>(i / size.width);
            const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                const int nx = x + dx[d], ny = y + dy[d];
                if (nx < 0 || ny < 0 || nx >= size.width || ny >= size.height) continue;
                const std::size_t j = static_cast<std::size_t>(ny) * size.width + nx;
                if (!visited[j] && cm.assignment[j] == static_cast<std::int32_t>(k)) {
                    visited[j] = true;
                    stack.push_back(j);
                }
            }
        }
        CHECK(n == static_cast<std::size_t>(cm.clusters[k].pixel_count));
    }
}

TEST_CASE("sppx_refine degenerate confidence maps") {
    const ImageSize size{32, 24};
    RgbImage img;
    img.size = size;
    img.pixels.assign(size.pixel_count(), {100, 150, 100});

    const ConfidenceMap ones(size, std::vector<float>(size.pixel_count(), 1.f));
    for (std::uint8_t l : sppx_refine(img, ones, 12, 0.4).labels) CHECK(l == 1);

    const ConfidenceMap zeros(size, std::vector<float>(size.pixel_count(), 0.f));
    for (std::uint8_t l : sppx_refine(img, zeros, 12, 0.4).labels) CHECK(l == 0);
}

TEST_CASE("sppx majority rule on a known split") {
    // 5x1 image, one superpixel; 3 of 5 scores above tau0 -> vote 0.6, foreground.
    const ImageSize size{5, 1};
    RgbImage img;
    img.size = size;
    img.pixels.assign(5, {128, 128, 128});
    const ConfidenceMap m(size, {0.9f, 0.8f, 0.7f, 0.1f, 0.2f});
    const SegMask mask = sppx_refine(img, m, 1, 0.4);
    for (float v : mask.avg_votes) CHECK(v == static_cast<float>(0.6));
    for (std::uint8_t l : mask.labels) CHECK(l == 1);
}
