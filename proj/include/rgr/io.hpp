#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgr/metrics.hpp"
#include "rgr/model.hpp"

namespace rgr {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FileNotFound : IoError {
    explicit FileNotFound(const std::string& path) : IoError("file not found: " + path) {}
};
struct DecodeError : IoError {
    using IoError::IoError;
};
struct UnsupportedDepth : DecodeError {
    using DecodeError::DecodeError;
};
struct WriteError : IoError {
    using IoError::IoError;
};

// PNG (8-bit RGB/RGBA/gray/palette) or binary PPM (P6). Gray is replicated to
// RGB, alpha dropped. 16-bit PNG -> UnsupportedDepth.
RgbImage load_image(const std::string& path);

// PFM ("Pf" grayscale, scale field sets endianness, bottom-up rows) or 16-bit
// grayscale PNG mapped v/65535. Values are clamped to [0,1]; *clamped_count
// (if given) receives how many needed it.
ConfidenceMap load_confidence(const std::string& path, std::size_t* clamped_count = nullptr);

// 8-bit grayscale PNG, 0 = background, 255 = foreground.
void save_mask(const SegMask& mask, const std::string& path);

SegMask load_mask(const std::string& path);

// Little-endian float32 PFM.
void save_scores(const std::vector<float>& scores, ImageSize size, const std::string& path);

// 16-bit grayscale PNG, round(v * 65535); round-trips through load_confidence.
void save_confidence16(const ConfidenceMap& m, const std::string& path);

struct Report {
    std::optional<double> iou;
    std::optional<BoundaryScore> boundary;
    std::map<std::string, std::string> config;  // effective config echo
    double timing_ms = 0;
};

void save_report(const Report& report, const std::string& path);

std::string report_to_json(const Report& report);

}  // namespace rgr
