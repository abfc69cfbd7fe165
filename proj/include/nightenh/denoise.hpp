#pragma once

#include "nightenh/image.hpp"

namespace nightenh {

struct BilateralParams {
    int window = 15;
    double sigma_spatial = 3.0;
    double sigma_range = 0.1;

    void validate() const;
};

// Exact windowed bilateral filter; the window is clipped at the border.
Channel bilateral(const Channel& chan, const BilateralParams& p);

// Normalized Gaussian over a clipped window x window neighbourhood, evaluated
// separably.
Channel gaussian(const Channel& chan, int window, double sigma);

// Baseline Gaussian settings used for comparisons: w = 9, sigma = 0.3 * w / 2.
inline constexpr int kBaselineGaussianWindow = 9;
inline constexpr double kBaselineGaussianSigma = 0.3 * 9 / 2.0;

ImageF denoise_rgb(const ImageF& img, const BilateralParams& p);
ImageF gaussian_rgb(const ImageF& img, int window, double sigma);

}  // namespace nightenh
