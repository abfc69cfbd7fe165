#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nightenh/denoise.hpp"
#include "nightenh/histsmooth.hpp"
#include "nightenh/image.hpp"
#include "nightenh/metrics.hpp"
#include "nightenh/rbaf.hpp"
#include "nightenh/simulate.hpp"
#include "nightenh/tonemap.hpp"

namespace nightenh {

enum class StageOrder { ce_then_denoise, denoise_then_ce };

struct EnhanceConfig {
    ToneParams tone;
    RbafParams rbaf;
    SmoothParams smooth;
    bool histogram_smoothing = true;
    double chroma_alpha = 1.6;
    BilateralParams bilateral;
    bool denoise = true;
    StageOrder order = StageOrder::ce_then_denoise;

    void validate() const;
};

struct StageTiming {
    std::string stage;
    double ms = 0.0;
};

/// Intermediate planes of one enhance run, filled when requested.
struct StageDump {
    Channel luma;
    Channel tone_mapped;
    Channel mask;
    Channel beta;
    Channel reflectance;
    Channel stretched;
    Channel enhanced_luma;
    Histogram256 histogram;
    Histogram256 smoothed;
    ImageF contrast_enhanced;
};

struct RunReport {
    std::string label;
    std::vector<StageTiming> timings;
    std::vector<std::filesystem::path> outputs;
    MetricReport metrics;
};

struct EnhanceResult {
    ImageF image;
    std::vector<StageTiming> timings;
};

/// Full chain: colour split, tone map, adaptive Retinex filter, histogram
/// smoothing, recombination and bilateral denoising (before or after the
/// contrast chain per `cfg.order`). Gray input is promoted to RGB.
EnhanceResult enhance(const ImageF& img, const EnhanceConfig& cfg,
                      StageDump* dump = nullptr);

// Contrast chain only (no denoising), RGB in and out.
ImageF contrast_enhance(const ImageF& rgb, const EnhanceConfig& cfg,
                        StageDump* dump = nullptr,
                        std::vector<StageTiming>* timings = nullptr);

void write_stage_dump(const StageDump& dump, const std::filesystem::path& dir);

struct OrderExperiment {
    ImageF degraded;
    ImageF ce_first;
    ImageF denoise_first;
    RunReport ce_first_report;
    RunReport denoise_first_report;
};

/// Degrades `clean`, adds Poisson noise and enhances under both stage orders.
/// Metrics are taken against `clean`.
OrderExperiment order_experiment(const ImageF& clean, const DegradeSpec& spec,
                                 const NoiseSpec& noise, const EnhanceConfig& cfg);

struct ReportEntry {
    std::string label;
    ImageF image;
    std::optional<ImageF> reference;
};

/// CSV with header `label,ssim,luminance,vcm,edge_energy`, one row per entry.
/// A reference of the wrong size leaves the row in place with the ssim cell
/// carrying the error note.
std::string compare_report(const std::vector<ReportEntry>& entries,
                           const VcmParams& vcm = {});

std::string csv_header();
std::string csv_row(const std::string& label, const MetricReport& m);

// "%.6g"
std::string format_number(double v);

}  // namespace nightenh
