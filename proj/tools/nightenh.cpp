// Command-line front end: enhance, degrade, denoise, metrics, order-exp.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nightenh/config.hpp"
#include "nightenh/denoise.hpp"
#include "nightenh/error.hpp"
#include "nightenh/image_io.hpp"
#include "nightenh/metrics.hpp"
#include "nightenh/pipeline.hpp"
#include "nightenh/simulate.hpp"

namespace fs = std::filesystem;
using namespace nightenh;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

struct ConfigOptions {
    std::optional<std::string> file;
    std::vector<std::string> overrides;
    std::optional<std::string> order;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", file, "key=value configuration file");
        cmd->add_option("--set", overrides, "override one key, e.g. --set color.alpha=1.0");
    }

    EnhanceConfig build() const {
        EnhanceConfig cfg;
        if (file) load_config_file(cfg, *file);
        for (const auto& kv : overrides) apply_config_assignment(cfg, kv);
        if (order) cfg.order = parse_order(*order);
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-light image enhancement and night-image simulation"};
    app.require_subcommand(1);

    // enhance
    auto* enh = app.add_subcommand("enhance", "Run the enhancement chain on one image");
    std::string enh_in, enh_out;
    std::optional<std::string> dump_dir;
    bool show_timings = false;
    ConfigOptions enh_cfg;
    enh->add_option("input", enh_in)->required();
    enh->add_option("-o,--output", enh_out)->required();
    enh_cfg.attach(enh);
    enh->add_option("--order", enh_cfg.order, "ce-first|denoise-first")
        ->check(CLI::IsMember({"ce-first", "denoise-first"}));
    enh->add_option("--dump-stages", dump_dir, "write intermediate planes to DIR");
    enh->add_flag("--timings", show_timings, "print per-stage timings");

    // degrade
    auto* deg = app.add_subcommand("degrade", "Simulate LLL / VLLL / HDR night images");
    std::string deg_in, deg_out;
    std::optional<std::string> preset;
    std::optional<double> deg_t, deg_alpha, t_low, t_high, peak;
    std::uint64_t seed = 0;
    deg->add_option("input", deg_in)->required();
    deg->add_option("-o,--output", deg_out)->required();
    deg->add_option("--preset", preset)->check(CLI::IsMember({"lll", "vlll", "hdr"}));
    deg->add_option("--t", deg_t, "dark-region fraction");
    deg->add_option("--alpha", deg_alpha, "brightness weight");
    deg->add_option("--t-low", t_low, "HDR low-end fraction");
    deg->add_option("--t-high", t_high, "HDR high-end fraction");
    deg->add_option("--poisson-peak", peak, "photon count at full scale; enables noise");
    deg->add_option("--seed", seed);

    // denoise
    auto* den = app.add_subcommand("denoise", "Per-channel bilateral (or Gaussian) filtering");
    std::string den_in, den_out;
    BilateralParams bp;
    bool use_gaussian = false;
    std::optional<int> g_window;
    std::optional<double> g_sigma;
    den->add_option("input", den_in)->required();
    den->add_option("-o,--output", den_out)->required();
    den->add_option("--window", bp.window, "odd window size")->capture_default_str();
    den->add_option("--sigma-d", bp.sigma_spatial, "spatial sigma (px)")->capture_default_str();
    den->add_option("--sigma-r", bp.sigma_range, "range sigma")->capture_default_str();
    den->add_flag("--gaussian", use_gaussian, "use the Gaussian baseline (w=9, sigma=1.35)");
    den->add_option("--gaussian-window", g_window);
    den->add_option("--gaussian-sigma", g_sigma);

    // metrics
    auto* met = app.add_subcommand("metrics", "SSIM / luminance / VCM / edge energy");
    std::string met_in;
    std::optional<std::string> met_ref, met_csv;
    VcmParams vcm_params;
    met->add_option("image", met_in)->required();
    met->add_option("--ref", met_ref, "clean reference for SSIM");
    met->add_option("--csv", met_csv, "also write the CSV to this file");
    met->add_option("--vcm-block", vcm_params.block)->capture_default_str();
    met->add_option("--vcm-tau", vcm_params.tau)->capture_default_str();

    // order-exp
    auto* ord = app.add_subcommand("order-exp", "Compare CE-first and denoise-first orders");
    std::string ord_in, ord_csv;
    std::string ord_preset = "lll";
    std::uint64_t ord_seed = 0;
    double ord_peak = NoiseSpec{}.peak;
    std::optional<std::string> out_dir;
    ConfigOptions ord_cfg;
    ord->add_option("clean", ord_in)->required();
    ord->add_option("--preset", ord_preset)->check(CLI::IsMember({"lll", "vlll", "hdr"}))->capture_default_str();
    ord->add_option("--seed", ord_seed);
    ord->add_option("--poisson-peak", ord_peak)->capture_default_str();
    ord->add_option("--csv", ord_csv)->required();
    ord->add_option("--out-dir", out_dir, "write degraded and enhanced images here");
    ord_cfg.attach(ord);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*enh) {
            const EnhanceConfig cfg = enh_cfg.build();
            const ImageF img = load_image(enh_in);
            StageDump dump;
            const auto res = enhance(img, cfg, dump_dir ? &dump : nullptr);
            save_image(res.image, enh_out);
            if (dump_dir) write_stage_dump(dump, *dump_dir);
            if (show_timings) {
                for (const auto& t : res.timings) std::printf("%-12s %9.2f ms\n", t.stage.c_str(), t.ms);
            }
        } else if (*deg) {
            DegradeSpec spec;
            if (preset) {
                spec = DegradeSpec::preset(*preset);
            } else if (!deg_t && !deg_alpha && !t_low && !t_high) {
                std::cerr << "degrade: give --preset or explicit --t/--alpha\n";
                return kUsage;
            }
            if (deg_t) spec.t = *deg_t;
            if (deg_alpha) spec.alpha = *deg_alpha;
            if (t_low) spec.t_low = *t_low;
            if (t_high) spec.t_high = *t_high;
            if (!preset && (t_low || t_high)) spec.kind = DegradeSpec::Kind::hdr;
            ImageF out = degrade(load_image(deg_in), spec);
            if (peak) out = add_poisson(out, {*peak, seed});
            save_image(out, deg_out);
        } else if (*den) {
            const ImageF img = load_image(den_in);
            const ImageF out = use_gaussian
                                   ? gaussian_rgb(img, g_window.value_or(kBaselineGaussianWindow),
                                                  g_sigma.value_or(kBaselineGaussianSigma))
                                   : denoise_rgb(img, bp);
            save_image(out, den_out);
        } else if (*met) {
            std::vector<ReportEntry> entries(1);
            entries[0].label = fs::path(met_in).filename().string();
            entries[0].image = load_image(met_in);
            if (met_ref) entries[0].reference = load_image(*met_ref);
            const std::string csv = compare_report(entries, vcm_params);
            std::cout << csv;
            if (met_csv) write_text(*met_csv, csv);
        } else if (*ord) {
            const EnhanceConfig cfg = ord_cfg.build();
            const ImageF clean = load_image(ord_in);
            const auto exp = order_experiment(clean, DegradeSpec::preset(ord_preset),
                                              {ord_peak, ord_seed}, cfg);
            const std::string csv = csv_header() +
                                    csv_row(exp.ce_first_report.label, exp.ce_first_report.metrics) +
                                    csv_row(exp.denoise_first_report.label, exp.denoise_first_report.metrics);
            write_text(ord_csv, csv);
            if (out_dir) {
                fs::create_directories(*out_dir);
                save_image(exp.degraded, fs::path(*out_dir) / "degraded.png");
                save_image(exp.ce_first, fs::path(*out_dir) / "ce_first.png");
                save_image(exp.denoise_first, fs::path(*out_dir) / "denoise_first.png");
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}
