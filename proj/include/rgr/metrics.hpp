#pragma once

#include <vector>

#include "rgr/model.hpp"

namespace rgr {

// Jaccard index |A n B| / |A u B|; 1.0 when both masks are empty.
double iou(const SegMask& a, const SegMask& b);

struct BoundaryScore {
    double precision = 0;
    double recall = 0;
    double f = 0;
};

// Contour F-measure: boundary pixels of pred and gt matched within Euclidean
// distance tol. Both boundaries empty -> f = 1; one empty -> f = 0.
BoundaryScore boundary_f(const SegMask& pred, const SegMask& gt, double tol);

// DAVIS-style default matching tolerance: 0.8% of the image diagonal, rounded up.
double default_boundary_tol(ImageSize size);

struct PrPoint {
    double threshold = 0;
    double precision = 0;
    double recall = 0;
    double iou = 0;
};

// Binarize `scores > t` for each threshold and score against gt. Empty
// prediction has precision 1 by convention.
std::vector<PrPoint> pr_sweep(const std::vector<float>& scores, const SegMask& gt,
                              const std::vector<double>& thresholds);

}  // namespace rgr
