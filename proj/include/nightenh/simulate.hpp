#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "nightenh/image.hpp"

namespace nightenh {

struct DegradeSpec {
    enum class Kind { lll, vlll, hdr, custom };

    Kind kind = Kind::custom;
    double t = 0.0;
    double alpha = 1.0;
    double t_low = 0.05;
    double t_high = 0.05;

    static DegradeSpec lll() { return {Kind::lll, 0.03, 0.7, 0.0, 0.0}; }
    static DegradeSpec vlll() { return {Kind::vlll, 0.03, 0.3, 0.0, 0.0}; }
    static DegradeSpec hdr() { return {Kind::hdr, 0.0, 1.0, 0.05, 0.05}; }

    // "lll", "vlll" or "hdr"; throws ArgumentError otherwise.
    static DegradeSpec preset(std::string_view name);
};

struct NoiseSpec {
    double peak = 100.0;  // expected photon count at full scale
    std::uint64_t seed = 0;
};

/// Pooled 256-bin cdf over every sample of every channel;
/// returns min{i | cdf(i) >= t} / 255.
double cdf_quantile(const ImageF& img, double t);

/// alpha * max(x - d, 0) with d = cdf_quantile(img, t).
ImageF degrade_low(const ImageF& img, double t, double alpha);

/// Clips t_low / t_high of the pooled histogram at each end and stretches the
/// rest onto [0,1]. Throws ArgumentError when the quantiles collapse.
ImageF degrade_hdr(const ImageF& img, double t_low, double t_high);

ImageF degrade(const ImageF& img, const DegradeSpec& spec);

/// Poisson(x * Q) / Q per sample, clamped to [0,1]. Every (channel, row) pair
/// draws from its own stream derived from the seed.
ImageF add_poisson(const ImageF& img, const NoiseSpec& noise);

/// Deterministic Poisson sampler used by add_poisson. Inversion below mean 10,
/// PTRS transformed rejection (Hormann 1993) above.
class PoissonSampler {
public:
    explicit PoissonSampler(std::uint64_t seed);

    std::uint64_t operator()(double mean);
    double uniform();  // [0,1) with 53 random bits

private:
    std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nightenh
