#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rgr/baseline.hpp"
#include "rgr/bench.hpp"
#include "rgr/io.hpp"
#include "rgr/metrics.hpp"
#include "rgr/refine.hpp"

namespace {

struct CliConfig {
    double tau0 = 0.4;
    double tau_f = 0.6;
    double tau_b = 0.0;
    int n_s = 10;
    double seed_spacing = 8.0;
    double compactness = 10.0;
    double d_max = 2.0;
    int connectivity = 4;
    int thicken_radius = 5;
    double roi_margin = 16.0;
    std::uint64_t rng_seed = 1;
    int threads = 0;

    rgr::RefineConfig to_refine_config() const {
        rgr::RefineConfig cfg;
        cfg.tau0 = tau0;
        cfg.tau_f = tau_f;
        cfg.tau_b = tau_b;
        cfg.n_s = n_s;
        cfg.seed_spacing = seed_spacing;
        cfg.theta_s = seed_spacing * seed_spacing;
        cfg.theta_m = compactness * compactness;
        cfg.d_max = d_max;
        cfg.connectivity = connectivity;
        cfg.thicken_radius = thicken_radius;
        cfg.roi_margin = roi_margin;
        cfg.rng_seed = rng_seed;
        return cfg;
    }

    std::map<std::string, std::string> echo() const {
        auto num = [](double v) {
            std::string s = std::to_string(v);
            s.erase(s.find_last_not_of('0') + 1);
            if (!s.empty() && s.back() == '.') s.pop_back();
            return s;
        };
        return {{"tau0", num(tau0)},
                {"tau-f", num(tau_f)},
                {"tau-b", num(tau_b)},
                {"n-s", std::to_string(n_s)},
                {"seed-spacing", num(seed_spacing)},
                {"compactness", num(compactness)},
                {"d-max", num(d_max)},
                {"connectivity", std::to_string(connectivity)},
                {"thicken-radius", std::to_string(thicken_radius)},
                {"roi-margin", num(roi_margin)},
                {"rng-seed", std::to_string(rng_seed)},
                {"threads", std::to_string(threads)}};
    }
};

void add_config_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--tau0", cfg.tau0, "detector operating threshold");
    cmd->add_option("--tau-f", cfg.tau_f, "high confidence foreground threshold");
    cmd->add_option("--tau-b", cfg.tau_b, "high confidence background threshold");
    cmd->add_option("--n-s", cfg.n_s, "Monte Carlo passes");
    cmd->add_option("--seed-spacing", cfg.seed_spacing, "desired average seed spacing (px)");
    cmd->add_option("--compactness", cfg.compactness, "color compactness scale (theta_m^0.5)");
    cmd->add_option("--d-max", cfg.d_max, "growth distance cap");
    cmd->add_option("--connectivity", cfg.connectivity, "4 or 8")
        ->check(CLI::IsMember({4, 8}));
    cmd->add_option("--thicken-radius", cfg.thicken_radius, "uncertainty thickening radius (px)");
    cmd->add_option("--roi-margin", cfg.roi_margin, "near-background depth (px)");
    cmd->add_option("--rng-seed", cfg.rng_seed, "random seed");
    cmd->add_option("--threads", cfg.threads, "worker count (0 = hardware)");
    cmd->set_config("--config", "", "key=value config file; flags override it");
}

void check_dims(rgr::ImageSize a, rgr::ImageSize b, const char* what) {
    if (!(a == b))
        throw std::invalid_argument(std::string("dimension mismatch: ") + what + " " +
                                    std::to_string(a.width) + "x" + std::to_string(a.height) +
                                    " vs " + std::to_string(b.width) + "x" +
                                    std::to_string(b.height));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RGR segmentation refinement"};
    app.require_subcommand(1);

    CliConfig cfg;

    // refine
    std::string image_path, conf_path, out_path, scores_path, report_path;
    CLI::App* refine = app.add_subcommand("refine", "refine a confidence map into a mask");
    refine->add_option("image", image_path, "input image (PNG or P6 PPM)")->required();
    refine->add_option("confidence", conf_path, "confidence map (PFM or 16-bit gray PNG)")
        ->required();
    refine->add_option("output", out_path, "output mask PNG")->required();
    refine->add_option("--emit-scores", scores_path, "also write averaged vote map (PFM)");
    refine->add_option("--report", report_path, "write JSON run report");
    add_config_flags(refine, cfg);

    // baseline
    std::size_t sppx_k = 0;
    CLI::App* baseline = app.add_subcommand("baseline", "superpixel majority-voting refinement");
    baseline->add_option("image", image_path)->required();
    baseline->add_option("confidence", conf_path)->required();
    baseline->add_option("output", out_path)->required();
    baseline->add_option("--k", sppx_k, "superpixel count (default: area / seed-spacing^2)");
    baseline->add_option("--emit-scores", scores_path, "also write vote-ratio map (PFM)");
    baseline->add_option("--report", report_path, "write JSON run report");
    add_config_flags(baseline, cfg);

    // eval
    std::string pred_path, gt_path;
    double tol = -1;
    CLI::App* eval = app.add_subcommand("eval", "score a mask against ground truth");
    eval->add_option("pred", pred_path, "predicted mask PNG")->required();
    eval->add_option("gt", gt_path, "ground truth mask PNG")->required();
    eval->add_option("--tol", tol, "boundary matching tolerance (px; default 0.8% of diagonal)");
    eval->add_option("--report", report_path, "write metrics JSON");

    // bench
    int scenes = 50, bw = 320, bh = 240;
    rgr::DegradeParams deg;
    std::string json_path, csv_path;
    CLI::App* bench = app.add_subcommand("bench", "synthetic refinement benchmark");
    bench->add_option("--scenes", scenes, "number of scenes");
    bench->add_option("--width", bw);
    bench->add_option("--height", bh);
    bench->add_option("--blur-sigma", deg.blur_sigma);
    bench->add_option("--shift-range", deg.shift_range);
    bench->add_option("--noise-sigma", deg.noise_sigma);
    bench->add_option("--out-json", json_path, "write per-scene rows as JSON");
    bench->add_option("--out-csv", csv_path, "write per-scene rows as CSV");
    add_config_flags(bench, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*refine || *baseline) {
            const auto t0 = std::chrono::steady_clock::now();
            const rgr::RgbImage img = rgr::load_image(image_path);
            std::size_t clamped = 0;
            const rgr::ConfidenceMap m = rgr::load_confidence(conf_path, &clamped);
            if (clamped)
                std::cerr << "warning: clamped " << clamped << " out-of-range scores\n";
            check_dims(img.size, m.size(), "image vs confidence");

            rgr::SegMask mask;
            if (*refine) {
                mask = rgr::rgr_refine(img, m, cfg.to_refine_config(), cfg.threads);
            } else {
                const std::size_t k =
                    sppx_k > 0 ? sppx_k
                               : std::max<std::size_t>(
                                     1, static_cast<std::size_t>(std::llround(
                                            img.size.pixel_count() /
                                            (cfg.seed_spacing * cfg.seed_spacing))));
                mask = rgr::sppx_refine(img, m, k, cfg.tau0);
            }
            const auto t1 = std::chrono::steady_clock::now();

            rgr::save_mask(mask, out_path);
            if (!scores_path.empty()) rgr::save_scores(mask.avg_votes, mask.size, scores_path);
            if (!report_path.empty()) {
                rgr::Report rep;
                rep.config = cfg.echo();
                rep.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                rgr::save_report(rep, report_path);
            }
        } else if (*eval) {
            const rgr::SegMask pred = rgr::load_mask(pred_path);
            const rgr::SegMask gt = rgr::load_mask(gt_path);
            check_dims(pred.size, gt.size, "pred vs gt");
            if (tol < 0) tol = rgr::default_boundary_tol(gt.size);

            rgr::Report rep;
            rep.iou = rgr::iou(pred, gt);
            rep.boundary = rgr::boundary_f(pred, gt, tol);
            std::cout << rgr::report_to_json(rep) << "\n";
            if (!report_path.empty()) rgr::save_report(rep, report_path);
        } else if (*bench) {
            const rgr::BenchReport report =
                rgr::run_benchmark(scenes, {bw, bh}, cfg.to_refine_config(), deg, cfg.rng_seed,
                                   cfg.threads);
            if (!json_path.empty()) {
                std::ofstream out(json_path);
                if (!out) throw rgr::WriteError("cannot open for writing: " + json_path);
                out << report.to_json() << "\n";
            }
            if (!csv_path.empty()) {
                std::ofstream out(csv_path);
                if (!out) throw rgr::WriteError("cannot open for writing: " + csv_path);
                out << report.to_csv();
            }
            for (const char* method : {"raw", "sppx", "rgr"})
                std::printf("%-5s mean IoU %.4f  mean F %.4f  mean ms %.1f\n", method,
                            report.mean_iou(method), report.mean_boundary_f(method),
                            report.mean_runtime_ms(method));
        }
    } catch (const rgr::WriteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const rgr::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
