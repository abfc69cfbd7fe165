#include "nightenh/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nightenh/colorspace.hpp"
#include "nightenh/error.hpp"
#include "nightenh/image_io.hpp"

namespace nightenh {
namespace {

using Clock = std::chrono::steady_clock;

// Runs one stage, records its wall time and prefixes errors with its name.
template <typename Fn>
auto run_stage(std::string_view name, std::vector<StageTiming>* timings, Fn&& fn) {
    const auto start = Clock::now();
    auto finish = [&] {
        if (timings != nullptr) {
            const std::chrono::duration<double, std::milli> ms = Clock::now() - start;
            timings->push_back({std::string(name), ms.count()});
        }
    };
    try {
        auto result = fn();
        finish();
        return result;
    } catch (const FormatError& e) {
        throw FormatError(std::string(name) + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError(std::string(name) + ": " + e.what());
    } catch (const ArgumentError& e) {
        throw ArgumentError(std::string(name) + ": " + e.what());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void EnhanceConfig::validate() const {
    tone.validate();
    rbaf.validate();
    smooth.validate();
    bilateral.validate();
    if (!(chroma_alpha >= 0.0)) throw ArgumentError("chroma alpha must be >= 0");
}

ImageF contrast_enhance(const ImageF& rgb, const EnhanceConfig& cfg, StageDump* dump,
                        std::vector<StageTiming>* timings) {
    auto planes = run_stage("colorspace", timings, [&] { return to_lcc(rgb, fit_basis(rgb)); });
    const Channel toned = run_stage("tonemap", timings, [&] { return tone_map(planes.luma, cfg.tone); });
    const Channel mask = run_stage("surround", timings, [&] { return adaptive_mask(toned, cfg.rbaf); });
    const Channel beta = beta_map(toned, cfg.rbaf);
    const Channel refl = run_stage("reflectance", timings, [&] { return reflectance(toned, mask, beta, cfg.rbaf); });
    const Channel stretched = normalize_stretch(refl).plane;

    Channel enhanced = stretched;
    Histogram256 hist;
    Histogram256 smoothed;
    if (cfg.histogram_smoothing) {
        enhanced = run_stage("histogram", timings, [&] {
            hist = build_histogram(stretched);
            smoothed = smooth_histogram(hist, cfg.smooth);
            return apply_map(stretched, cumulative_map(smoothed));
        });
    }

    if (dump != nullptr) {
        dump->luma = planes.luma;
        dump->tone_mapped = toned;
        dump->mask = mask;
        dump->beta = beta;
        dump->reflectance = refl;
        dump->stretched = stretched;
        dump->enhanced_luma = enhanced;
        dump->histogram = hist;
        dump->smoothed = smoothed;
    }

    planes.luma = std::move(enhanced);
    ImageF out = run_stage("recombine", timings, [&] { return from_lcc_display(planes, cfg.chroma_alpha); });
    if (dump != nullptr) dump->contrast_enhanced = out;
    return out;
}

EnhanceResult enhance(const ImageF& img, const EnhanceConfig& cfg, StageDump* dump) {
    cfg.validate();
    EnhanceResult res;
    ImageF rgb = to_rgb(img);
    auto denoise_stage = [&](const ImageF& in) {
        if (!cfg.denoise) return in;
        return run_stage("denoise", &res.timings, [&] { return denoise_rgb(in, cfg.bilateral); });
    };
    if (cfg.order == StageOrder::ce_then_denoise) {
        res.image = denoise_stage(contrast_enhance(rgb, cfg, dump, &res.timings));
    } else {
        res.image = contrast_enhance(denoise_stage(rgb), cfg, dump, &res.timings);
    }
    return res;
}

void write_stage_dump(const StageDump& dump, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto save_plane = [&](const Channel& c, const char* name) {
        if (!c.empty()) save_image(ImageF::from_plane(c), dir / name);
    };
    save_plane(dump.luma, "01_luma.png");
    save_plane(dump.tone_mapped, "02_tone_mapped.png");
    save_plane(dump.mask, "03_mask.png");
    save_plane(dump.beta, "04_beta.png");
    if (!dump.reflectance.empty()) save_plane(normalize_stretch(dump.reflectance).plane, "05_reflectance.png");
    save_plane(dump.stretched, "06_stretched.png");
    save_plane(dump.enhanced_luma, "07_enhanced_luma.png");
    if (!dump.contrast_enhanced.empty()) save_image(dump.contrast_enhanced, dir / "08_contrast_enhanced.png");

    std::ofstream csv(dir / "histograms.csv");
    if (!csv) throw IoError("cannot write " + (dir / "histograms.csv").string());
    csv << "bin,input,smoothed\n";
    for (int i = 0; i < kHistBins; ++i) {
        csv << i << ',' << format_number(dump.histogram.counts[i]) << ','
            << format_number(dump.smoothed.counts[i]) << '\n';
    }
}

OrderExperiment order_experiment(const ImageF& clean, const DegradeSpec& spec,
                                 const NoiseSpec& noise, const EnhanceConfig& cfg) {
    OrderExperiment exp;
    const ImageF rgb_clean = to_rgb(clean);
    exp.degraded = run_stage("degrade", nullptr, [&] { return add_poisson(degrade(rgb_clean, spec), noise); });

    EnhanceConfig ce_cfg = cfg;
    ce_cfg.order = StageOrder::ce_then_denoise;
    EnhanceConfig dn_cfg = cfg;
    dn_cfg.order = StageOrder::denoise_then_ce;

    auto ce = enhance(exp.degraded, ce_cfg);
    auto dn = enhance(exp.degraded, dn_cfg);
    exp.ce_first = std::move(ce.image);
    exp.denoise_first = std::move(dn.image);

    exp.ce_first_report = {"ce-first", std::move(ce.timings), {}, measure(exp.ce_first, &rgb_clean)};
    exp.denoise_first_report = {"denoise-first", std::move(dn.timings), {},
                                measure(exp.denoise_first, &rgb_clean)};
    return exp;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_header() { return "label,ssim,luminance,vcm,edge_energy\n"; }

std::string csv_row(const std::string& label, const MetricReport& m) {
    std::string row = csv_escape(label) + ',';
    if (m.ssim) row += format_number(*m.ssim);
    row += ',' + format_number(m.mean_luminance) + ',' + format_number(m.vcm) + ',' +
           format_number(m.edge_energy) + '\n';
    return row;
}

std::string compare_report(const std::vector<ReportEntry>& entries, const VcmParams& vcm_params) {
    std::string out = csv_header();
    for (const ReportEntry& e : entries) {
        const bool ref_ok = e.reference && e.reference->width() == e.image.width() &&
                            e.reference->height() == e.image.height();
        MetricReport m = measure(e.image, ref_ok ? &*e.reference : nullptr, vcm_params);
        std::string row = csv_row(e.label, m);
        if (e.reference && !ref_ok) {
            // ssim cell is empty; put the note there.
            const auto cut = csv_escape(e.label).size() + 1;
            row.insert(cut, "error: reference size mismatch");
        }
        out += row;
    }
    return out;
}

}  // namespace nightenh
