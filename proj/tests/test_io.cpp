#include <doctest.h>

#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "rgr/io.hpp"

using namespace rgr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rgr_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("P6 PPM decoding") {
    TempDir tmp;
    const std::string path = tmp.file("a.ppm");
    std::string data = "P6\n2 2\n255\n";
    const unsigned char px[12] = {255, 0, 0, 0, 255, 0, 0, 0, 255, 255, 255, 255};
    data.append(reinterpret_cast<const char*>(px), 12);
    write_bytes(path, data);

    const RgbImage img = load_image(path);
    CHECK(img.size == ImageSize{2, 2});
    CHECK(img.pixels[0] == Rgb8{255, 0, 0});
    CHECK(img.pixels[1] == Rgb8{0, 255, 0});
    CHECK(img.pixels[2] == Rgb8{0, 0, 255});
    CHECK(img.pixels[3] == Rgb8{255, 255, 255});
}

TEST_CASE("truncated and malformed files raise DecodeError") {
    TempDir tmp;
    const std::string path = tmp.file("bad.ppm");
    write_bytes(path, "P6\n4 4\n255\nxy");  // far too little pixel data
    CHECK_THROWS_AS(load_image(path), DecodeError);

    write_bytes(tmp.file("junk.bin"), "this is not an image");
    CHECK_THROWS_AS(load_image(tmp.file("junk.bin")), DecodeError);

    CHECK_THROWS_AS(load_image(tmp.file("missing.png")), FileNotFound);
}

TEST_CASE("16-bit PNG is rejected by load_image but accepted by load_confidence") {
    TempDir tmp;
    const std::string path = tmp.file("conf16.png");
    const ConfidenceMap m({3, 2}, {0.f, 0.25f, 0.5f, 0.75f, 1.f, 0.125f});
    save_confidence16(m, path);

    CHECK_THROWS_AS(load_image(path), UnsupportedDepth);

    const ConfidenceMap back = load_confidence(path);
    CHECK(back.size() == ImageSize{3, 2});
    CHECK(back.at(4) == 1.f);
    CHECK(back.at(0) == 0.f);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(std::abs(back.at(i) - m.at(i)) < 1.0 / 65535.0);
}

TEST_CASE("PFM round trip preserves float32 values and row order") {
    TempDir tmp;
    const std::string path = tmp.file("scores.pfm");
    const ImageSize size{3, 2};
    // Distinct rows so a missed bottom-up flip would be caught.
    const std::vector<float> scores = {0.f, 0.1f, 0.2f, 0.8f, 0.9f, 1.f};
    save_scores(scores, size, path);

    std::size_t clamped = 9;
    const ConfidenceMap back = load_confidence(path, &clamped);
    CHECK(clamped == 0);
    CHECK(back.size() == size);
    for (std::size_t i = 0; i < scores.size(); ++i) CHECK(back.at(i) == scores[i]);
}

TEST_CASE("PFM out-of-range values clamp with a warning count") {
    TempDir tmp;
    const std::string path = tmp.file("hot.pfm");
    save_scores({1.25f, 0.5f, -0.5f, 0.f}, {2, 2}, path);
    std::size_t clamped = 0;
    const ConfidenceMap m = load_confidence(path, &clamped);
    CHECK(clamped == 2);
    CHECK(m.at(0) == 1.f);
    CHECK(m.at(2) == 0.f);
}

TEST_CASE("big-endian PFM is honored via the scale sign") {
    TempDir tmp;
    const std::string path = tmp.file("be.pfm");
    std::string data = "Pf\n1 1\n1.0\n";
    const float v = 0.5f;
    unsigned char be[4];
    std::memcpy(be, &v, 4);
    std::swap(be[0], be[3]);
    std::swap(be[1], be[2]);
    data.append(reinterpret_cast<const char*>(be), 4);
    write_bytes(path, data);
    CHECK(load_confidence(path).at(0) == 0.5f);
}

TEST_CASE("color PFM is rejected") {
    TempDir tmp;
    write_bytes(tmp.file("c.pfm"), "PF\n1 1\n-1.0\n............");
    CHECK_THROWS_AS(load_confidence(tmp.file("c.pfm")), DecodeError);
}

TEST_CASE("mask save/load round trip is exact") {
    TempDir tmp;
    const std::string path = tmp.file("mask.png");
    SegMask mask;
    mask.size = {4, 3};
    mask.labels = {1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0};
    mask.avg_votes.assign(12, 0.f);
    for (std::size_t i = 0; i < 12; ++i) mask.avg_votes[i] = mask.labels[i] ? 1.f : 0.f;
    save_mask(mask, path);

    const SegMask back = load_mask(path);
    CHECK(back.size == mask.size);
    CHECK(back.labels == mask.labels);
}

TEST_CASE("all-foreground mask encodes as 255s") {
    TempDir tmp;
    SegMask mask;
    mask.size = {2, 2};
    mask.labels = {1, 1, 1, 1};
    mask.avg_votes = {1, 1, 1, 1};
    save_mask(mask, tmp.file("full.png"));
    const RgbImage img = load_image(tmp.file("full.png"));  // gray promoted to RGB
    for (const Rgb8& p : img.pixels) CHECK(p == Rgb8{255, 255, 255});
}

TEST_CASE("report JSON carries metric keys and config echo") {
    TempDir tmp;
    Report rep;
    rep.iou = 1.0;
    rep.boundary = BoundaryScore{0.5, 0.25, 1.0 / 3.0};
    rep.config["tau0"] = "0.4";
    rep.timing_ms = 12.5;
    const std::string json = report_to_json(rep);
    CHECK(json.find("\"iou\": 1.0") != std::string::npos);
    CHECK(json.find("\"boundary_f\"") != std::string::npos);
    CHECK(json.find("\"tau0\": \"0.4\"") != std::string::npos);
    CHECK(json.find("\"timing_ms\"") != std::string::npos);

    save_report(rep, tmp.file("rep.json"));
    std::ifstream in(tmp.file("rep.json"));
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all.find("\"iou\"") != std::string::npos);
}

TEST_CASE("write failures surface with path context") {
    SegMask mask;
    mask.size = {1, 1};
    mask.labels = {1};
    mask.avg_votes = {1.f};
    CHECK_THROWS_AS(save_mask(mask, "/nonexistent-dir/x/mask.png"), WriteError);
}
