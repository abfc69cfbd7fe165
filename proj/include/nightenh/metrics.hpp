#pragma once

#include <optional>
#include <string>

#include "nightenh/image.hpp"

namespace nightenh {

struct VcmParams {
    int block = 16;
    double tau = 0.02;
};

struct MetricReport {
    std::optional<double> ssim;  // only with a reference
    double mean_luminance = 0.0;
    double vcm = 0.0;
    double edge_energy = 0.0;
    std::string reference;
};

/// Mean SSIM over all positions where the 11x11 Gaussian window (sigma 1.5)
/// fits, C1 = 0.01^2, C2 = 0.03^2.
double ssim(const Channel& a, const Channel& b);

double mean_luminance(const ImageF& img);

/// 100 * (fraction of block x block tiles with std > tau) * (mean std of
/// those tiles), on the luminance plane. Partial tiles are dropped.
double vcm(const ImageF& img, const VcmParams& p = {});

// Mean squared central-difference gradient of luminance over interior pixels.
double edge_energy(const ImageF& img);

/// All four metrics; SSIM is computed on luminance planes when `ref` is set.
MetricReport measure(const ImageF& img, const ImageF* ref = nullptr,
                     const VcmParams& p = {});

}  // namespace nightenh
