#pragma once

#include "nightenh/image.hpp"

namespace nightenh {

struct ToneParams {
    double slope_coeff = 1.0 / 6.0;  // Gamma
    double offset = 2.0 / 3.0;       // epsilon
    double log_floor = 1.0 / 512.0;

    void validate() const;
};

// Geometric mean of the plane, exp(mean(log(max(L, floor)))).
double log_average_luminance(const Channel& luma, const ToneParams& p = {});

// min(1, Gamma * mean + epsilon); the power applied by tone_map.
double tone_exponent(double log_average, const ToneParams& p = {});

Channel tone_map(const Channel& luma, const ToneParams& p = {});

}  // namespace nightenh
