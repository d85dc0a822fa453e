#include "rgr/color.hpp"

#include <cmath>
#include <cstddef>

namespace rgr {

namespace {

double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

// CIE f(t) with the exact rational constants (epsilon = 216/24389, kappa = 24389/27).
double lab_f(double t) {
    constexpr double eps = 216.0 / 24389.0;
    constexpr double kappa = 24389.0 / 27.0;
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

}  // namespace

Lab srgb_to_lab(Rgb8 c) {
    const double r = srgb_decode(c.r / 255.0);
    const double g = srgb_decode(c.g / 255.0);
    const double b = srgb_decode(c.b / 255.0);

    // Linear sRGB -> XYZ, D65.
    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

    const double fx = lab_f(x / 0.95047);
    const double fy = lab_f(y / 1.00000);
    const double fz = lab_f(z / 1.08883);

    Lab out;
    out.l = static_cast<float>(116.0 * fy - 16.0);
    out.a = static_cast<float>(500.0 * (fx - fy));
    out.b = static_cast<float>(200.0 * (fy - fz));
    return out;
}

LabImage rgb_to_lab(const RgbImage& img) {
    LabImage out;
    out.size = img.size;
    out.pixels.resize(img.pixels.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(img.pixels.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out.pixels[i] = srgb_to_lab(img.pixels[i]);
    return out;
}

}  // namespace rgr
