#include "rgr/io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rgr {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) {
        if (mode[0] == 'r') throw FileNotFound(path);
        throw WriteError("cannot open for writing: " + path);
    }
    return f;
}

bool is_png(std::FILE* f) {
    unsigned char sig[8];
    const bool ok = std::fread(sig, 1, 8, f) == 8 && png_sig_cmp(sig, 0, 8) == 0;
    std::rewind(f);
    return ok;
}

struct PngRead {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngRead() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw DecodeError("libpng init failed");
    }
    ~PngRead() { png_destroy_read_struct(&png, &info, nullptr); }
    PngRead(const PngRead&) = delete;
    PngRead& operator=(const PngRead&) = delete;
};

struct PngWrite {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngWrite() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw WriteError("libpng init failed");
    }
    ~PngWrite() { png_destroy_write_struct(&png, &info); }
    PngWrite(const PngWrite&) = delete;
    PngWrite& operator=(const PngWrite&) = delete;
};

// Decode to 8-bit rows; channels out is 1 or 3. Throws UnsupportedDepth on
// 16-bit input when allow16 is false, otherwise delivers native 16-bit gray.
struct PngData {
    int width = 0, height = 0;
    int bit_depth = 0;
    int channels = 0;
    std::vector<std::vector<unsigned char>> rows;
};

PngData read_png(const std::string& path, bool promote_for_rgb) {
    FilePtr f = open_file(path, "rb");
    if (!is_png(f.get())) throw DecodeError("not a PNG file: " + path);

    PngRead ctx;
    std::vector<std::vector<unsigned char>> rows;
    if (setjmp(png_jmpbuf(ctx.png))) throw DecodeError("corrupt PNG data: " + path);

    png_init_io(ctx.png, f.get());
    png_read_info(ctx.png, ctx.info);

    PngData out;
    out.width = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
    out.height = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
    out.bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);

    if (promote_for_rgb) {
        if (out.bit_depth == 16) throw UnsupportedDepth("16-bit PNG not supported here: " + path);
        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(ctx.png);
        if (out.bit_depth < 8) png_set_expand(ctx.png);
        if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
        png_set_strip_alpha(ctx.png);
    } else {
        if (color_type != PNG_COLOR_TYPE_GRAY)
            throw DecodeError("expected grayscale PNG: " + path);
        if (out.bit_depth != 16)
            throw UnsupportedDepth("expected 16-bit grayscale PNG: " + path);
    }
    png_read_update_info(ctx.png, ctx.info);
    out.channels = png_get_channels(ctx.png, ctx.info);
    out.bit_depth = png_get_bit_depth(ctx.png, ctx.info);

    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    rows.assign(out.height, std::vector<unsigned char>(rowbytes));
    std::vector<png_bytep> row_ptrs(out.height);
    for (int y = 0; y < out.height; ++y) row_ptrs[y] = rows[y].data();
    png_read_image(ctx.png, row_ptrs.data());
    png_read_end(ctx.png, nullptr);

    out.rows = std::move(rows);
    return out;
}

int ppm_next_token(std::FILE* f, char* buf, int cap) {
    int c;
    do {
        c = std::fgetc(f);
        if (c == '#')
            while (c != '\n' && c != EOF) c = std::fgetc(f);
    } while (c == ' ' || c == '\t' || c == '\n' || c == '\r');
    int n = 0;
    while (c != EOF && c != ' ' && c != '\t' && c != '\n' && c != '\r' && n < cap - 1) {
        buf[n++] = static_cast<char>(c);
        c = std::fgetc(f);
    }
    buf[n] = 0;
    return n;
}

RgbImage load_ppm(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    char tok[64];
    if (!ppm_next_token(f.get(), tok, sizeof tok) || std::strcmp(tok, "P6") != 0)
        throw DecodeError("not a P6 PPM: " + path);
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("truncated PPM header: " + path);
    const int w = std::atoi(tok);
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("truncated PPM header: " + path);
    const int h = std::atoi(tok);
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("truncated PPM header: " + path);
    const int maxval = std::atoi(tok);
    if (w < 1 || h < 1) throw DecodeError("bad PPM dimensions: " + path);
    if (maxval != 255) throw UnsupportedDepth("only maxval 255 PPM supported: " + path);

    RgbImage img;
    img.size = {w, h};
    img.pixels.resize(img.size.pixel_count());
    std::vector<unsigned char> raw(img.size.pixel_count() * 3);
    if (std::fread(raw.data(), 1, raw.size(), f.get()) != raw.size())
        throw DecodeError("truncated PPM data: " + path);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
    return img;
}

ConfidenceMap load_pfm(const std::string& path, std::size_t* clamped_count) {
    FilePtr f = open_file(path, "rb");
    char tok[64];
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("empty PFM: " + path);
    if (std::strcmp(tok, "PF") == 0) throw DecodeError("color PFM not supported: " + path);
    if (std::strcmp(tok, "Pf") != 0) throw DecodeError("not a grayscale PFM: " + path);
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("truncated PFM header: " + path);
    const int w = std::atoi(tok);
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("truncated PFM header: " + path);
    const int h = std::atoi(tok);
    if (!ppm_next_token(f.get(), tok, sizeof tok)) throw DecodeError("truncated PFM header: " + path);
    const double scale = std::atof(tok);
    if (w < 1 || h < 1) throw DecodeError("bad PFM dimensions: " + path);
    const bool little_endian = scale < 0;

    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * 4);
    if (std::fread(raw.data(), 1, raw.size(), f.get()) != raw.size())
        throw DecodeError("truncated PFM data: " + path);

    // PFM rows are bottom-up; flip into the internal top-down raster.
    std::vector<float> scores(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const unsigned char* row = raw.data() + static_cast<std::size_t>(h - 1 - y) * w * 4;
        for (int x = 0; x < w; ++x) {
            const unsigned char* b = row + 4 * x;
            std::uint32_t u = little_endian
                                  ? (std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
                                     std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24)
                                  : (std::uint32_t(b[3]) | std::uint32_t(b[2]) << 8 |
                                     std::uint32_t(b[1]) << 16 | std::uint32_t(b[0]) << 24);
            float v;
            std::memcpy(&v, &u, 4);
            scores[static_cast<std::size_t>(y) * w + x] = v;
        }
    }
    return ConfidenceMap::clamped({w, h}, std::move(scores), clamped_count);
}

bool has_png_signature(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    return is_png(f.get());
}

void write_gray8_png(const std::vector<std::uint8_t>& gray, ImageSize size,
                     const std::string& path) {
    FilePtr f = open_file(path, "wb");
    PngWrite ctx;
    if (setjmp(png_jmpbuf(ctx.png))) throw WriteError("PNG write failed: " + path);
    png_init_io(ctx.png, f.get());
    png_set_IHDR(ctx.png, ctx.info, size.width, size.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    for (int y = 0; y < size.height; ++y)
        png_write_row(ctx.png, const_cast<png_bytep>(gray.data() + static_cast<std::size_t>(y) *
                                                                       size.width));
    png_write_end(ctx.png, nullptr);
}

}  // namespace

RgbImage load_image(const std::string& path) {
    if (has_png_signature(path)) {
        const PngData d = read_png(path, /*promote_for_rgb=*/true);
        if (d.channels != 3) throw DecodeError("unexpected channel count in PNG: " + path);
        RgbImage img;
        img.size = {d.width, d.height};
        img.pixels.resize(img.size.pixel_count());
        for (int y = 0; y < d.height; ++y)
            for (int x = 0; x < d.width; ++x) {
                const unsigned char* p = d.rows[y].data() + 3 * x;
                img.pixels[static_cast<std::size_t>(y) * d.width + x] = {p[0], p[1], p[2]};
            }
        return img;
    }
    return load_ppm(path);
}

ConfidenceMap load_confidence(const std::string& path, std::size_t* clamped_count) {
    if (!has_png_signature(path)) return load_pfm(path, clamped_count);

    const PngData d = read_png(path, /*promote_for_rgb=*/false);
    std::vector<float> scores(static_cast<std::size_t>(d.width) * d.height);
    for (int y = 0; y < d.height; ++y)
        for (int x = 0; x < d.width; ++x) {
            // PNG stores 16-bit samples big-endian.
            const unsigned char* p = d.rows[y].data() + 2 * x;
            const std::uint16_t v = static_cast<std::uint16_t>(p[0] << 8 | p[1]);
            scores[static_cast<std::size_t>(y) * d.width + x] = static_cast<float>(v) / 65535.f;
        }
    return ConfidenceMap::clamped({d.width, d.height}, std::move(scores), clamped_count);
}

void save_mask(const SegMask& mask, const std::string& path) {
    std::vector<std::uint8_t> gray(mask.labels.size());
    for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.labels[i] ? 255 : 0;
    write_gray8_png(gray, mask.size, path);
}

SegMask load_mask(const std::string& path) {
    const RgbImage img = load_image(path);
    SegMask mask;
    mask.size = img.size;
    mask.labels.resize(img.pixels.size());
    mask.avg_votes.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        mask.labels[i] = img.pixels[i].r > 127 ? 1 : 0;
        mask.avg_votes[i] = mask.labels[i] ? 1.f : 0.f;
    }
    return mask;
}

void save_scores(const std::vector<float>& scores, ImageSize size, const std::string& path) {
    if (scores.size() != size.pixel_count())
        throw std::invalid_argument("save_scores: size mismatch");
    FilePtr f = open_file(path, "wb");
    std::string header = "Pf\n" + std::to_string(size.width) + " " + std::to_string(size.height) +
                         "\n-1.0\n";
    if (std::fwrite(header.data(), 1, header.size(), f.get()) != header.size())
        throw WriteError("PFM header write failed: " + path);
    // Bottom-up rows, little-endian (scale -1.0).
    for (int y = size.height - 1; y >= 0; --y) {
        const float* row = scores.data() + static_cast<std::size_t>(y) * size.width;
        if (std::fwrite(row, 4, size.width, f.get()) != static_cast<std::size_t>(size.width))
            throw WriteError("PFM data write failed: " + path);
    }
}

void save_confidence16(const ConfidenceMap& m, const std::string& path) {
    const ImageSize size = m.size();
    std::vector<unsigned char> raw(size.pixel_count() * 2);
    for (std::size_t i = 0; i < size.pixel_count(); ++i) {
        const auto v = static_cast<std::uint16_t>(std::lround(m.at(i) * 65535.f));
        raw[2 * i] = static_cast<unsigned char>(v >> 8);  // big-endian PNG samples
        raw[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
    }
    FilePtr f = open_file(path, "wb");
    PngWrite ctx;
    if (setjmp(png_jmpbuf(ctx.png))) throw WriteError("PNG write failed: " + path);
    png_init_io(ctx.png, f.get());
    png_set_IHDR(ctx.png, ctx.info, size.width, size.height, 16, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    for (int y = 0; y < size.height; ++y)
        png_write_row(ctx.png, raw.data() + static_cast<std::size_t>(y) * size.width * 2);
    png_write_end(ctx.png, nullptr);
}

std::string report_to_json(const Report& report) {
    nlohmann::ordered_json j;
    if (report.iou) j["iou"] = *report.iou;
    if (report.boundary) {
        j["boundary_precision"] = report.boundary->precision;
        j["boundary_recall"] = report.boundary->recall;
        j["boundary_f"] = report.boundary->f;
    }
    j["config"] = report.config;
    j["timing_ms"] = report.timing_ms;
    return j.dump(2);
}

void save_report(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw WriteError("cannot open for writing: " + path);
    out << report_to_json(report) << "\n";
    if (!out) throw WriteError("report write failed: " + path);
}

}  // namespace rgr
