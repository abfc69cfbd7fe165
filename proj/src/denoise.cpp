#include "nightenh/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nightenh/error.hpp"
#include "parallel.hpp"

namespace nightenh {

void BilateralParams::validate() const {
    if (window < 3 || window % 2 == 0) throw ArgumentError("bilateral window must be odd and >= 3");
    if (!(sigma_spatial > 0.0)) throw ArgumentError("bilateral sigma_d must be > 0");
    if (!(sigma_range > 0.0)) throw ArgumentError("bilateral sigma_r must be > 0");
}

Channel bilateral(const Channel& chan, const BilateralParams& p) {
    p.validate();
    const int w = chan.width();
    const int h = chan.height();
    const int half = p.window / 2;
    const int side = p.window;

    std::vector<double> spatial(static_cast<std::size_t>(side) * side);
    const double inv_s = 1.0 / (2.0 * p.sigma_spatial * p.sigma_spatial);
    for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
            spatial[(dy + half) * side + dx + half] = std::exp(-(dx * dx + dy * dy) * inv_s);
        }
    }
    const double inv_r = 1.0 / (2.0 * p.sigma_range * p.sigma_range);

    Channel out(w, h);
    detail::parallel_rows(h, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const int ya = std::max(0, y - half);
            const int yb = std::min(h - 1, y + half);
            for (int x = 0; x < w; ++x) {
                const int xa = std::max(0, x - half);
                const int xb = std::min(w - 1, x + half);
                const double centre = chan.at(x, y);
                double num = 0.0;
                double den = 0.0;
                for (int qy = ya; qy <= yb; ++qy) {
                    const double* srow = &spatial[(qy - y + half) * side];
                    const auto row = chan.row(qy);
                    for (int qx = xa; qx <= xb; ++qx) {
                        const double v = row[qx];
                        const double diff = v - centre;
                        const double wgt = srow[qx - x + half] * std::exp(-diff * diff * inv_r);
                        num += wgt * v;
                        den += wgt;
                    }
                }
                out.at(x, y) = static_cast<float>(num / den);
            }
        }
    });
    return out;
}

Channel gaussian(const Channel& chan, int window, double sigma) {
    if (window < 1 || window % 2 == 0) throw ArgumentError("gaussian window must be odd");
    if (!(sigma > 0.0)) throw ArgumentError("gaussian sigma must be > 0");
    const int w = chan.width();
    const int h = chan.height();
    const int half = window / 2;
    std::vector<double> taps(window);
    for (int k = -half; k <= half; ++k) taps[k + half] = std::exp(-(k * k) / (2.0 * sigma * sigma));

    // Separable passes, each renormalized over the clipped interval; the
    // product equals the 2-D kernel renormalized over the clipped rectangle.
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    detail::parallel_rows(h, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const auto row = chan.row(y);
            for (int x = 0; x < w; ++x) {
                double num = 0.0, den = 0.0;
                for (int k = std::max(-half, -x); k <= std::min(half, w - 1 - x); ++k) {
                    num += taps[k + half] * row[x + k];
                    den += taps[k + half];
                }
                tmp[static_cast<std::size_t>(y) * w + x] = num / den;
            }
        }
    });
    Channel out(w, h);
    detail::parallel_rows(h, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const int ka = std::max(-half, -y);
            const int kb = std::min(half, h - 1 - y);
            for (int x = 0; x < w; ++x) {
                double num = 0.0, den = 0.0;
                for (int k = ka; k <= kb; ++k) {
                    num += taps[k + half] * tmp[static_cast<std::size_t>(y + k) * w + x];
                    den += taps[k + half];
                }
                out.at(x, y) = static_cast<float>(num / den);
            }
        }
    });
    return out;
}

ImageF denoise_rgb(const ImageF& img, const BilateralParams& p) {
    ImageF out(img.width(), img.height(), img.channels());
    for (int c = 0; c < img.channels(); ++c) out.set_plane(c, bilateral(img.plane(c), p));
    return out;
}

ImageF gaussian_rgb(const ImageF& img, int window, double sigma) {
    ImageF out(img.width(), img.height(), img.channels());
    for (int c = 0; c < img.channels(); ++c) out.set_plane(c, gaussian(img.plane(c), window, sigma));
    return out;
}

}  // namespace nightenh
