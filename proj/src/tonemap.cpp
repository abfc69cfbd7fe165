#include "nightenh/tonemap.hpp"

#include <algorithm>
#include <cmath>

#include "nightenh/error.hpp"

namespace nightenh {

void ToneParams::validate() const {
    if (!(offset > 0.0 && offset <= 1.0)) throw ArgumentError("tone offset must lie in (0, 1]");
    if (!(slope_coeff >= 0.0)) throw ArgumentError("tone slope coefficient must be >= 0");
    if (!(log_floor > 0.0)) throw ArgumentError("tone log floor must be > 0");
}

double log_average_luminance(const Channel& luma, const ToneParams& p) {
    if (luma.empty()) throw ArgumentError("log-average of an empty channel");
    double sum = 0.0;
    for (const float v : luma.samples()) sum += std::log(std::max(static_cast<double>(v), p.log_floor));
    return std::exp(sum / static_cast<double>(luma.size()));
}

double tone_exponent(double log_average, const ToneParams& p) {
    return std::min(1.0, p.slope_coeff * log_average + p.offset);
}

Channel tone_map(const Channel& luma, const ToneParams& p) {
    p.validate();
    const double exponent = tone_exponent(log_average_luminance(luma, p), p);
    Channel out = luma;
    for (float& v : out.samples()) {
        v = static_cast<float>(std::pow(std::clamp(static_cast<double>(v), 0.0, 1.0), exponent));
    }
    return out;
}

}  // namespace nightenh
