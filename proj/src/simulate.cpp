#include "nightenh/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nightenh/error.hpp"
#include "nightenh/histsmooth.hpp"
#include "parallel.hpp"

namespace nightenh {
namespace {

// Pooled per-bin counts over every sample.
std::array<std::uint64_t, kHistBins> pooled_counts(const ImageF& img) {
    std::array<std::uint64_t, kHistBins> counts{};
    for (const float v : img.samples()) ++counts[histogram_bin(v)];
    return counts;
}

template <typename Fn>
ImageF map_samples(const ImageF& img, Fn&& fn) {
    ImageF out = img;
    for (float& v : out.samples()) v = fn(v);
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

DegradeSpec DegradeSpec::preset(std::string_view name) {
    if (name == "lll") return lll();
    if (name == "vlll") return vlll();
    if (name == "hdr") return hdr();
    throw ArgumentError("unknown degradation preset '" + std::string(name) + "'");
}

double cdf_quantile(const ImageF& img, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("quantile t must lie in [0, 1]");
    const auto counts = pooled_counts(img);
    const double target = t * static_cast<double>(img.samples().size());
    std::uint64_t prefix = 0;
    for (int i = 0; i < kHistBins; ++i) {
        prefix += counts[i];
        if (static_cast<double>(prefix) >= target) return i / 255.0;
    }
    return 1.0;
}

ImageF degrade_low(const ImageF& img, double t, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("degrade alpha must lie in (0, 1]");
    const float d = static_cast<float>(cdf_quantile(img, t));
    const float a = static_cast<float>(alpha);
    return map_samples(img, [=](float x) { return a * std::max(x - d, 0.0f); });
}

ImageF degrade_hdr(const ImageF& img, double t_low, double t_high) {
    if (!(t_low >= 0.0 && t_high >= 0.0 && t_low + t_high < 1.0)) {
        throw ArgumentError("HDR quantiles need t_low, t_high >= 0 and t_low + t_high < 1");
    }
    const auto counts = pooled_counts(img);
    const double n = static_cast<double>(img.samples().size());
    int low = -1;
    int high = -1;
    std::uint64_t prefix = 0;
    for (int i = 0; i < kHistBins; ++i) {
        prefix += counts[i];
        const double cdf = static_cast<double>(prefix);
        if (low < 0 && cdf >= t_low * n) low = i;
        if (cdf <= (1.0 - t_high) * n) high = i;
    }
    if (high <= low) {
        throw ArgumentError("degenerate histogram: d_high (t_high=" + std::to_string(t_high) +
                            ") does not exceed d_low (t_low=" + std::to_string(t_low) + ")");
    }
    const float d_low = static_cast<float>(low / 255.0);
    const float gain = static_cast<float>(255.0 / (high - low));
    return map_samples(img, [=](float x) { return std::min(gain * std::max(x - d_low, 0.0f), 1.0f); });
}

ImageF degrade(const ImageF& img, const DegradeSpec& spec) {
    if (spec.kind == DegradeSpec::Kind::hdr) return degrade_hdr(img, spec.t_low, spec.t_high);
    return degrade_low(img, spec.t, spec.alpha);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

PoissonSampler::PoissonSampler(std::uint64_t seed) : engine_(seed) {}

double PoissonSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t PoissonSampler::operator()(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
        // Sequential search of the cdf.
        const double u = uniform();
        double p = std::exp(-mean);
        double cdf = p;
        std::uint64_t k = 0;
        while (u > cdf && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

ImageF add_poisson(const ImageF& img, const NoiseSpec& noise) {
    if (!(noise.peak > 0.0)) throw ArgumentError("Poisson peak must be > 0");
    ImageF out = img;
    const int w = img.width();
    const int h = img.height();
    for (int c = 0; c < img.channels(); ++c) {
        auto plane = out.plane_view(c);
        detail::parallel_rows(h, [&](int y0, int y1) {
            for (int y = y0; y < y1; ++y) {
                const std::uint64_t stream = (static_cast<std::uint64_t>(c) << 32) | static_cast<std::uint32_t>(y);
                PoissonSampler sampler(derive_seed(noise.seed, stream));
                for (int x = 0; x < w; ++x) {
                    float& v = plane[static_cast<std::size_t>(y) * w + x];
                    const double mean = std::max(static_cast<double>(v), 0.0) * noise.peak;
                    const double draw = static_cast<double>(sampler(mean)) / noise.peak;
                    v = static_cast<float>(std::clamp(draw, 0.0, 1.0));
                }
            }
        });
    }
    return out;
}

}  // namespace nightenh
