#pragma once

#include "rgr/model.hpp"

namespace rgr {

// sRGB (D65, 2 degree observer) -> CIELAB for a single pixel.
Lab srgb_to_lab(Rgb8 c);

// Whole-image conversion, parallel over pixels.
LabImage rgb_to_lab(const RgbImage& img);

}  // namespace rgr
