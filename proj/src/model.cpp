#include "rgr/model.hpp"

#include <algorithm>

namespace rgr {

ConfidenceMap::ConfidenceMap(ImageSize size, std::vector<float> scores)
    : size_(size), scores_(std::move(scores)) {
    if (size_.width < 1 || size_.height < 1)
        throw std::invalid_argument("ConfidenceMap: degenerate size");
    if (scores_.size() != size_.pixel_count())
        throw std::invalid_argument("ConfidenceMap: score count does not match size");
    for (float s : scores_)
        if (!(s >= 0.f && s <= 1.f))
            throw std::invalid_argument("ConfidenceMap: score outside [0,1]");
}

ConfidenceMap ConfidenceMap::clamped(ImageSize size, std::vector<float> scores,
                                     std::size_t* clamped_count) {
    std::size_t n = 0;
    for (float& s : scores) {
        if (!(s >= 0.f)) {  // also catches NaN
            s = 0.f;
            ++n;
        } else if (s > 1.f) {
            s = 1.f;
            ++n;
        }
    }
    if (clamped_count) *clamped_count = n;
    return ConfidenceMap(size, std::move(scores));
}

void RefineConfig::validate() const {
    if (!(0.0 <= tau_b && tau_b < tau0 && tau0 < tau_f && tau_f <= 1.0))
        throw std::invalid_argument("RefineConfig: need 0 <= tau_b < tau0 < tau_f <= 1");
    if (n_s < 1) throw std::invalid_argument("RefineConfig: n_s >= 1");
    if (seed_spacing < 1.0) throw std::invalid_argument("RefineConfig: seed_spacing >= 1");
    if (!(theta_s > 0.0) || !(theta_m > 0.0))
        throw std::invalid_argument("RefineConfig: theta_s, theta_m > 0");
    if (!(d_max > 0.0)) throw std::invalid_argument("RefineConfig: d_max > 0");
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("RefineConfig: connectivity must be 4 or 8");
    if (thicken_radius < 0) throw std::invalid_argument("RefineConfig: thicken_radius >= 0");
    if (roi_margin < 0.0) throw std::invalid_argument("RefineConfig: roi_margin >= 0");
}

}  // namespace rgr
