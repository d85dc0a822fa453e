#include <doctest.h>

#include <cmath>

#include "rgr/metrics.hpp"
#include "rgr/rng.hpp"

using namespace rgr;

namespace {

SegMask mask_from(ImageSize size, const std::vector<int>& bits) {
    SegMask m;
    m.size = size;
    m.labels.resize(bits.size());
    m.avg_votes.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        m.labels[i] = bits[i] ? 1 : 0;
        m.avg_votes[i] = bits[i] ? 1.f : 0.f;
    }
    return m;
}

SegMask filled_square(ImageSize size, int x0, int y0, int side) {
    std::vector<int> bits(size.pixel_count(), 0);
    for (int y = y0; y < y0 + side; ++y)
        for (int x = x0; x < x0 + side; ++x) bits[y * size.width + x] = 1;
    return mask_from(size, bits);
}

// All-pairs brute-force contour matching oracle.
BoundaryScore boundary_oracle(const SegMask& pred, const SegMask& gt, double tol) {
    const int w = pred.size.width, h = pred.size.height;
    auto boundary = [&](const SegMask& m) {
        std::vector<std::pair<int, int>> out;
        auto fg = [&](int x, int y) {
            return x >= 0 && y >= 0 && x < w && y < h && m.labels[std::size_t(y) * w + x];
        };
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (fg(x, y) && (!fg(x - 1, y) || !fg(x + 1, y) || !fg(x, y - 1) || !fg(x, y + 1)))
                    out.emplace_back(x, y);
        return out;
    };
    const auto pb = boundary(pred), gb = boundary(gt);
    BoundaryScore s;
    if (pb.empty() && gb.empty()) {
        s.precision = s.recall = s.f = 1;
        return s;
    }
    if (pb.empty() || gb.empty()) return s;
    auto matched = [&](const std::vector<std::pair<int, int>>& a,
                       const std::vector<std::pair<int, int>>& b) {
        std::size_t n = 0;
        for (auto [x, y] : a) {
            bool hit = false;
            for (auto [u, v] : b)
                if (std::hypot(double(x - u), double(y - v)) <= tol) {
                    hit = true;
                    break;
                }
            n += hit;
        }
        return n;
    };
    s.precision = double(matched(pb, gb)) / pb.size();
    s.recall = double(matched(gb, pb)) / gb.size();
    s.f = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0;
    return s;
}

}  // namespace

TEST_CASE("iou basic cases") {
    const ImageSize size{2, 2};
    const SegMask a = mask_from(size, {1, 1, 0, 0});
    CHECK(iou(a, a) == 1.0);

    const SegMask b = mask_from(size, {0, 0, 1, 1});
    CHECK(iou(a, b) == 0.0);

    // A = {(0,0),(1,0)}, B = {(1,0),(1,1)}: |n|=1, |u|=3.
    const SegMask c = mask_from(size, {0, 1, 0, 1});
    CHECK(iou(a, c) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const SegMask empty = mask_from(size, {0, 0, 0, 0});
    CHECK(iou(empty, empty) == 1.0);
    CHECK(iou(a, empty) == 0.0);

    CHECK_THROWS_AS(iou(a, mask_from({3, 1}, {0, 0, 0})), std::invalid_argument);
}

TEST_CASE("iou symmetry on random masks") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ImageSize size{8, 6};
        std::vector<int> xa(size.pixel_count()), xb(size.pixel_count());
        for (auto& v : xa) v = rng.below(2);
        for (auto& v : xb) v = rng.below(2);
        const SegMask a = mask_from(size, xa), b = mask_from(size, xb);
        CHECK(iou(a, b) == iou(b, a));
        CHECK(iou(a, b) >= 0.0);
        CHECK(iou(a, b) <= 1.0);
        CHECK((iou(a, b) == 1.0) == (a.labels == b.labels));
    }
}

TEST_CASE("boundary_f perfect match") {
    const SegMask m = filled_square({16, 16}, 4, 4, 8);
    for (double tol : {0.0, 1.0, 3.0}) {
        const BoundaryScore s = boundary_f(m, m, tol);
        CHECK(s.precision == 1.0);
        CHECK(s.recall == 1.0);
        CHECK(s.f == 1.0);
    }
}

TEST_CASE("boundary_f one-pixel shift flips between tol 0 and 1") {
    const SegMask gt = filled_square({20, 20}, 5, 5, 8);
    const SegMask pred = filled_square({20, 20}, 6, 5, 8);
    const BoundaryScore strict = boundary_f(pred, gt, 0.0);
    CHECK(strict.f < 1.0);
    const BoundaryScore loose = boundary_f(pred, gt, 1.0);
    CHECK(loose.f == 1.0);

    // Cross-check both tolerances against the all-pairs oracle.
    for (double tol : {0.0, 1.0, 2.0}) {
        const BoundaryScore got = boundary_f(pred, gt, tol);
        const BoundaryScore want = boundary_oracle(pred, gt, tol);
        CHECK(got.precision == doctest::Approx(want.precision).epsilon(1e-12));
        CHECK(got.recall == doctest::Approx(want.recall).epsilon(1e-12));
        CHECK(got.f == doctest::Approx(want.f).epsilon(1e-12));
    }
}

TEST_CASE("boundary_f empty conventions") {
    const ImageSize size{10, 10};
    const SegMask empty = mask_from(size, std::vector<int>(100, 0));
    const SegMask full = filled_square(size, 2, 2, 5);
    CHECK(boundary_f(empty, full, 2.0).f == 0.0);
    CHECK(boundary_f(full, empty, 2.0).f == 0.0);
    CHECK(boundary_f(empty, empty, 2.0).f == 1.0);
}

TEST_CASE("boundary_f matches the oracle on random masks and is monotone in tol") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const ImageSize size{12, 10};
        std::vector<int> xa(size.pixel_count()), xb(size.pixel_count());
        for (auto& v : xa) v = rng.below(3) == 0;
        for (auto& v : xb) v = rng.below(3) == 0;
        const SegMask a = mask_from(size, xa), b = mask_from(size, xb);
        double prev = -1;
        for (double tol : {0.0, 1.0, 1.5, 2.0, 3.0, 5.0}) {
            const BoundaryScore got = boundary_f(a, b, tol);
            const BoundaryScore want = boundary_oracle(a, b, tol);
            CHECK(got.f == doctest::Approx(want.f).epsilon(1e-12));
            CHECK(got.f >= prev);
            prev = got.f;
        }
    }
}

TEST_CASE("default boundary tolerance follows the 0.8% diagonal rule") {
    CHECK(default_boundary_tol({320, 240}) == 4.0);  // diag 400, 0.8% = 3.2, ceil
    CHECK(default_boundary_tol({100, 100}) == 2.0);
}

TEST_CASE("pr_sweep basics") {
    const ImageSize size{2, 2};
    const SegMask gt = mask_from(size, {1, 1, 1, 1});

    const auto all_one = pr_sweep({1, 1, 1, 1}, gt, {0.0});
    CHECK(all_one[0].precision == 1.0);
    CHECK(all_one[0].recall == 1.0);
    CHECK(all_one[0].iou == 1.0);

    const auto strict = pr_sweep({1, 1, 1, 1}, gt, {1.0});
    CHECK(strict[0].precision == 1.0);  // empty prediction convention
    CHECK(strict[0].recall == 0.0);

    const SegMask half = mask_from(size, {1, 0, 1, 0});
    const auto ind = pr_sweep({1, 0, 1, 0}, half, {0.5});
    CHECK(ind[0].precision == 1.0);
    CHECK(ind[0].recall == 1.0);
    CHECK(ind[0].iou == 1.0);
}

TEST_CASE("pr_sweep recall is monotone non-increasing in threshold") {
    Rng rng(17);
    const ImageSize size{10, 10};
    std::vector<float> scores(size.pixel_count());
    std::vector<int> bits(size.pixel_count());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        scores[i] = static_cast<float>(rng.next_double());
        bits[i] = rng.below(2);
    }
    const SegMask gt = mask_from(size, bits);
    std::vector<double> thresholds;
    for (int i = 0; i <= 10; ++i) thresholds.push_back(i / 10.0);
    const auto sweep = pr_sweep(scores, gt, thresholds);
    for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].recall <= sweep[i - 1].recall);
}
