#include "nightenh/colorspace.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "nightenh/error.hpp"
#include "parallel.hpp"

namespace nightenh {
namespace {

double log_sample(float v) { return std::log(std::max(static_cast<double>(v), kColorLogFloor)); }

Vec3 log_pixel(const ImageF& img, std::size_t i) {
    return {log_sample(img.plane_view(0)[i]), log_sample(img.plane_view(1)[i]),
            log_sample(img.plane_view(2)[i])};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Largest-magnitude component positive; ties resolved by the lower index.
void orient(Vec3& v) {
    int arg = 0;
    for (int k = 1; k < 3; ++k) {
        if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
    }
    if (v[arg] < 0) {
        for (double& x : v) x = -x;
    }
}

const ImageF& require_rgb(const ImageF& img, ImageF& storage) {
    if (img.channels() == 3) return img;
    storage = to_rgb(img);
    return storage;
}

}  // namespace

Vec3 ColorBasis::forward(const Vec3& log_rgb) const {
    const Vec3 d = {log_rgb[0] - mean[0], log_rgb[1] - mean[1], log_rgb[2] - mean[2]};
    return {dot(rows[0], d), dot(rows[1], d), dot(rows[2], d)};
}

Vec3 ColorBasis::inverse(const Vec3& lcc) const {
    Vec3 out = mean;
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 3; ++k) out[k] += rows[r][k] * lcc[r];
    }
    return out;
}

ColorBasis ColorBasis::fixed_opponent(const Vec3& mean) {
    const double s3 = 1.0 / std::sqrt(3.0);
    const double s2 = 1.0 / std::sqrt(2.0);
    const double s6 = 1.0 / std::sqrt(6.0);
    ColorBasis b;
    b.rows = {Vec3{s3, s3, s3}, Vec3{s2, 0.0, -s2}, Vec3{s6, -2.0 * s6, s6}};
    b.mean = mean;
    b.source = Source::fixed_opponent;
    return b;
}

ColorBasis fit_basis(const ImageF& input) {
    ImageF storage;
    const ImageF& img = require_rgb(input, storage);
    const std::size_t n = img.pixel_count();

    Vec3 mean{};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 v = log_pixel(img, i);
        for (int k = 0; k < 3; ++k) mean[k] += v[k];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 v = log_pixel(img, i);
        const Eigen::Vector3d d(v[0] - mean[0], v[1] - mean[1], v[2] - mean[2]);
        cov.noalias() += d * d.transpose();
    }
    cov /= static_cast<double>(n);

    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    if (eig.info() != Eigen::Success) return ColorBasis::fixed_opponent(mean);

    // Eigen sorts ascending.
    const Eigen::Vector3d values = eig.eigenvalues();
    const double top = values[2];
    if (!(top > 1e-12) || values[1] <= 1e-9 * top) return ColorBasis::fixed_opponent(mean);

    ColorBasis basis;
    basis.mean = mean;
    basis.source = ColorBasis::Source::fitted;
    for (int r = 0; r < 3; ++r) {
        const Eigen::Vector3d v = eig.eigenvectors().col(2 - r);
        basis.rows[r] = {v[0], v[1], v[2]};
    }

    Vec3& luma = basis.rows[0];
    if (luma[0] + luma[1] + luma[2] < 0) {
        for (double& x : luma) x = -x;
    }
    if (*std::ranges::min_element(luma) < -1e-9) {
        // Leading direction is not a brightness axis.
        return ColorBasis::fixed_opponent(mean);
    }
    for (double& x : luma) x = std::max(x, 0.0);
    orient(basis.rows[1]);
    orient(basis.rows[2]);
    return basis;
}

LccPlanes to_lcc(const ImageF& input, const ColorBasis& basis) {
    ImageF storage;
    const ImageF& img = require_rgb(input, storage);
    const int w = img.width();
    const int h = img.height();
    const std::size_t n = img.pixel_count();

    LccPlanes out{Channel(w, h), Channel(w, h), Channel(w, h), basis};
    std::vector<double> v0(n);
    detail::parallel_rows(h, [&](int y0, int y1) {
        for (std::size_t i = std::size_t(y0) * w; i < std::size_t(y1) * w; ++i) {
            const Vec3 v = basis.forward(log_pixel(img, i));
            v0[i] = v[0];
            out.c1[i] = static_cast<float>(v[1]);
            out.c2[i] = static_cast<float>(v[2]);
        }
    });

    const auto [lo, hi] = std::ranges::minmax_element(v0);
    out.lmin = *lo;
    out.lmax = *hi;
    const double span = out.lmax - out.lmin;
    if (!(span > 1e-12)) {
        out.degenerate_window = true;
        for (float& v : out.luma.samples()) v = 0.5f;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.luma[i] = static_cast<float>(std::clamp((v0[i] - out.lmin) / span, 0.0, 1.0));
    }
    return out;
}

namespace {

void check_planes(const LccPlanes& planes) {
    if (!planes.luma.same_shape(planes.c1) || !planes.luma.same_shape(planes.c2)) {
        throw ArgumentError("luminance and chroma planes differ in size");
    }
}

template <typename LumaFn>
ImageF recombine(const LccPlanes& planes, double alpha, Vec3 chroma_offset, LumaFn&& luma_coord) {
    check_planes(planes);
    const int w = planes.luma.width();
    const int h = planes.luma.height();
    ImageF out(w, h, 3);
    detail::parallel_rows(h, [&](int y0, int y1) {
        for (std::size_t i = std::size_t(y0) * w; i < std::size_t(y1) * w; ++i) {
            const Vec3 lcc = {luma_coord(planes.luma[i]),
                              alpha * planes.c1[i] + chroma_offset[1],
                              alpha * planes.c2[i] + chroma_offset[2]};
            const Vec3 log_rgb = planes.basis.inverse(lcc);
            for (int c = 0; c < 3; ++c) {
                out.plane_view(c)[i] =
                    static_cast<float>(std::clamp(std::exp(log_rgb[c]), 0.0, 1.0));
            }
        }
    });
    return out;
}

}  // namespace

ImageF from_lcc(const LccPlanes& planes, double alpha) {
    const double lmin = planes.lmin;
    const double span = planes.degenerate_window ? 0.0 : planes.lmax - planes.lmin;
    return recombine(planes, alpha, {0.0, 0.0, 0.0},
                     [&](float l) { return static_cast<double>(l) * span + lmin; });
}

ImageF from_lcc_display(const LccPlanes& planes, double alpha) {
    // Drop the mean offset: the luminance coordinate is placed absolutely and
    // only the mean colour cast is kept.
    LccPlanes centred = planes;
    centred.basis.mean = {0.0, 0.0, 0.0};
    const Vec3& mean = planes.basis.mean;
    const Vec3 cast = {0.0, dot(planes.basis.rows[1], mean), dot(planes.basis.rows[2], mean)};
    const Vec3& axis = planes.basis.rows[0];
    const double gray_gain = axis[0] + axis[1] + axis[2];
    return recombine(centred, alpha, cast, [&](float l) {
        return gray_gain * std::log(std::max(static_cast<double>(l), kColorLogFloor));
    });
}

}  // namespace nightenh
