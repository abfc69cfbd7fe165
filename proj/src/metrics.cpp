#include "nightenh/metrics.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "nightenh/error.hpp"

namespace nightenh {
namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::array<double, kSsimWindow> ssim_taps() {
    std::array<double, kSsimWindow> taps{};
    double sum = 0.0;
    for (int k = 0; k < kSsimWindow; ++k) {
        const double d = k - kSsimWindow / 2;
        taps[k] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
        sum += taps[k];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// 'Valid' separable filtering of a double plane.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::array<double, kSsimWindow>& taps) {
    const int ow = w - kSsimWindow + 1;
    const int oh = h - kSsimWindow + 1;
    std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kSsimWindow; ++k) acc += taps[k] * src[std::size_t(y) * w + x + k];
            tmp[std::size_t(y) * ow + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kSsimWindow; ++k) acc += taps[k] * tmp[std::size_t(y + k) * ow + x];
            out[std::size_t(y) * ow + x] = acc;
        }
    }
    return out;
}

}  // namespace

double ssim(const Channel& a, const Channel& b) {
    if (!a.same_shape(b)) throw ArgumentError("ssim inputs differ in size");
    const int w = a.width();
    const int h = a.height();
    if (w < kSsimWindow || h < kSsimWindow) {
        throw ArgumentError("ssim needs images of at least 11x11 pixels");
    }
    const std::size_t n = a.size();
    std::vector<double> va(n), vb(n), aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        va[i] = a[i];
        vb[i] = b[i];
        aa[i] = va[i] * va[i];
        bb[i] = vb[i] * vb[i];
        ab[i] = va[i] * vb[i];
    }
    const auto taps = ssim_taps();
    const auto mu_a = filter_valid(va, w, h, taps);
    const auto mu_b = filter_valid(vb, w, h, taps);
    const auto e_aa = filter_valid(aa, w, h, taps);
    const auto e_bb = filter_valid(bb, w, h, taps);
    const auto e_ab = filter_valid(ab, w, h, taps);

    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i];
        const double mb = mu_b[i];
        const double var_a = e_aa[i] - ma * ma;
        const double var_b = e_bb[i] - mb * mb;
        const double cov = e_ab[i] - ma * mb;
        sum += ((2.0 * ma * mb + kC1) * (2.0 * cov + kC2)) /
               ((ma * ma + mb * mb + kC1) * (var_a + var_b + kC2));
    }
    return sum / static_cast<double>(mu_a.size());
}

double mean_luminance(const ImageF& img) {
    double sum = 0.0;
    for (const float v : img.samples()) sum += v;
    return sum / static_cast<double>(img.samples().size());
}

double vcm(const ImageF& img, const VcmParams& p) {
    if (p.block < 2) throw ArgumentError("vcm block must be >= 2");
    if (!(p.tau > 0.0)) throw ArgumentError("vcm tau must be > 0");
    if (img.width() < p.block || img.height() < p.block) {
        throw ArgumentError("image is smaller than one vcm block");
    }
    const Channel luma = luminance(img);
    const int tiles_x = luma.width() / p.block;
    const int tiles_y = luma.height() / p.block;
    const double n = static_cast<double>(p.block) * p.block;
    int qualifying = 0;
    double std_sum = 0.0;
    for (int ty = 0; ty < tiles_y; ++ty) {
        for (int tx = 0; tx < tiles_x; ++tx) {
            double sum = 0.0;
            for (int y = ty * p.block; y < (ty + 1) * p.block; ++y) {
                for (int x = tx * p.block; x < (tx + 1) * p.block; ++x) sum += luma.at(x, y);
            }
            const double mean = sum / n;
            double ss = 0.0;
            for (int y = ty * p.block; y < (ty + 1) * p.block; ++y) {
                for (int x = tx * p.block; x < (tx + 1) * p.block; ++x) {
                    const double d = luma.at(x, y) - mean;
                    ss += d * d;
                }
            }
            const double sd = std::sqrt(ss / (n - 1.0));
            if (sd > p.tau) {
                ++qualifying;
                std_sum += sd;
            }
        }
    }
    if (qualifying == 0) return 0.0;
    const double fraction = static_cast<double>(qualifying) / (tiles_x * tiles_y);
    return 100.0 * fraction * (std_sum / qualifying);
}

double edge_energy(const ImageF& img) {
    const Channel luma = luminance(img);
    const int w = luma.width();
    const int h = luma.height();
    if (w < 3 || h < 3) return 0.0;
    double sum = 0.0;
    for (int y = 1; y + 1 < h; ++y) {
        for (int x = 1; x + 1 < w; ++x) {
            const double gx = 0.5 * (double(luma.at(x + 1, y)) - luma.at(x - 1, y));
            const double gy = 0.5 * (double(luma.at(x, y + 1)) - luma.at(x, y - 1));
            sum += gx * gx + gy * gy;
        }
    }
    return sum / (static_cast<double>(w - 2) * (h - 2));
}

MetricReport measure(const ImageF& img, const ImageF* ref, const VcmParams& p) {
    MetricReport m;
    if (ref != nullptr) m.ssim = ssim(luminance(img), luminance(*ref));
    m.mean_luminance = mean_luminance(img);
    m.vcm = vcm(img, p);
    m.edge_energy = edge_energy(img);
    return m;
}

}  // namespace nightenh
