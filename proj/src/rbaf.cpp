#include "nightenh/rbaf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nightenh/error.hpp"
#include "parallel.hpp"

namespace nightenh {

int RbafParams::radius() const {
    return r_max ? *r_max : static_cast<int>(std::ceil(3.0 * sigma0));
}

void RbafParams::validate() const {
    if (!(sigma0 > 0.0)) throw ArgumentError("rbaf sigma0 must be > 0");
    if (!(sigma1 > 0.0 && sigma1 <= sigma0 / 2.0)) {
        throw ArgumentError("rbaf sigma1 must satisfy 0 < sigma1 <= sigma0 / 2");
    }
    if (radius() < 1) throw ArgumentError("rbaf r_max must be >= 1");
    if (!(sigmoid_gain > 0.0)) throw ArgumentError("rbaf sigmoid gain must be > 0");
    if (!(log_floor > 0.0)) throw ArgumentError("rbaf log floor must be > 0");
    if (std::isnan(edge_threshold)) throw ArgumentError("rbaf edge threshold is NaN");
}

int direction_of(int dx, int dy) {
    if (dx == 0 && dy == 0) return 0;
    const double sector = std::atan2(static_cast<double>(dy), static_cast<double>(dx)) /
                          (std::numbers::pi / 4.0);
    const int d = static_cast<int>(std::lround(sector));
    return ((d % kDirections) + kDirections) % kDirections;
}

namespace {

// Rounded pixel offsets of the walk along each direction, r = 1..radius.
struct ScanPaths {
    std::array<std::vector<DirectionStep>, kDirections> steps;

    explicit ScanPaths(int radius) {
        for (int d = 0; d < kDirections; ++d) {
            const double theta = d * std::numbers::pi / 4.0;
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            steps[d].reserve(radius);
            for (int r = 1; r <= radius; ++r) {
                steps[d].push_back({static_cast<int>(std::lround(r * c)),
                                    static_cast<int>(std::lround(r * s))});
            }
        }
    }
};

std::uint8_t scan_bits(const Channel& luma, const ScanPaths& paths, double threshold, int x,
                       int y) {
    const int w = luma.width();
    const int h = luma.height();
    std::uint8_t bits = 0;
    for (int d = 0; d < kDirections; ++d) {
        float prev = luma.at(x, y);
        for (const DirectionStep& step : paths.steps[d]) {
            const int px = x + step.dx;
            const int py = y + step.dy;
            if (px < 0 || py < 0 || px >= w || py >= h) break;
            const float cur = luma.at(px, py);
            if (std::abs(static_cast<double>(cur) - prev) > threshold) {
                bits |= static_cast<std::uint8_t>(1u << d);
                break;
            }
            prev = cur;
        }
    }
    return bits;
}

// Disk offsets grouped by nearest direction, with weights for both sigmas.
struct SurroundKernel {
    struct Sector {
        std::vector<DirectionStep> offsets;
        std::vector<std::ptrdiff_t> linear;
        std::array<std::vector<float>, 2> weights;  // [0] sigma0, [1] sigma1
        std::array<double, 2> weight_sum{};
    };

    int radius;
    std::array<Sector, kDirections> sectors;

    SurroundKernel(int radius, double sigma0, double sigma1, int stride) : radius(radius) {
        const double inv0 = 1.0 / (sigma0 * sigma0);
        const double inv1 = 1.0 / (sigma1 * sigma1);
        for (int dy = -radius; dy <= radius; ++dy) {
            for (int dx = -radius; dx <= radius; ++dx) {
                const int r2 = dx * dx + dy * dy;
                if (r2 > radius * radius) continue;
                Sector& s = sectors[direction_of(dx, dy)];
                s.offsets.push_back({dx, dy});
                s.linear.push_back(static_cast<std::ptrdiff_t>(dy) * stride + dx);
                const double w0 = std::exp(-r2 * inv0);
                const double w1 = std::exp(-r2 * inv1);
                s.weights[0].push_back(static_cast<float>(w0));
                s.weights[1].push_back(static_cast<float>(w1));
                s.weight_sum[0] += static_cast<float>(w0);
                s.weight_sum[1] += static_cast<float>(w1);
            }
        }
    }
};

float surround_interior(const float* centre, const SurroundKernel& kernel, std::uint8_t bits) {
    double num = 0.0;
    double den = 0.0;
    for (int d = 0; d < kDirections; ++d) {
        const auto& sector = kernel.sectors[d];
        const int pick = (bits >> d) & 1;
        const float* w = sector.weights[pick].data();
        const std::ptrdiff_t* off = sector.linear.data();
        const std::size_t n = sector.linear.size();
        float acc0 = 0.0f, acc1 = 0.0f, acc2 = 0.0f, acc3 = 0.0f;
        std::size_t k = 0;
        for (; k + 4 <= n; k += 4) {
            acc0 += w[k] * centre[off[k]];
            acc1 += w[k + 1] * centre[off[k + 1]];
            acc2 += w[k + 2] * centre[off[k + 2]];
            acc3 += w[k + 3] * centre[off[k + 3]];
        }
        for (; k < n; ++k) acc0 += w[k] * centre[off[k]];
        num += static_cast<double>(acc0) + acc1 + acc2 + acc3;
        den += sector.weight_sum[pick];
    }
    return static_cast<float>(num / den);
}

float surround_clipped(const Channel& luma, const SurroundKernel& kernel, std::uint8_t bits,
                       int x, int y) {
    const int w = luma.width();
    const int h = luma.height();
    double num = 0.0;
    double den = 0.0;
    for (int d = 0; d < kDirections; ++d) {
        const auto& sector = kernel.sectors[d];
        const auto& weights = sector.weights[(bits >> d) & 1];
        for (std::size_t k = 0; k < sector.offsets.size(); ++k) {
            const int px = x + sector.offsets[k].dx;
            const int py = y + sector.offsets[k].dy;
            if (px < 0 || py < 0 || px >= w || py >= h) continue;
            num += static_cast<double>(weights[k]) * luma.at(px, py);
            den += weights[k];
        }
    }
    return static_cast<float>(num / den);
}

}  // namespace

SigmaField scan_directions(const Channel& luma, const RbafParams& p, int x, int y) {
    if (x < 0 || y < 0 || x >= luma.width() || y >= luma.height()) {
        throw ArgumentError("scan position outside the image");
    }
    const ScanPaths paths(p.radius());
    return {scan_bits(luma, paths, p.edge_threshold, x, y)};
}

Channel adaptive_mask(const Channel& luma, const RbafParams& p) {
    p.validate();
    const int w = luma.width();
    const int h = luma.height();
    const int radius = p.radius();
    const ScanPaths paths(radius);
    const SurroundKernel kernel(radius, p.sigma0, p.sigma1, w);

    Channel out(w, h);
    detail::parallel_rows(h, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const bool row_inside = y >= radius && y + radius < h;
            for (int x = 0; x < w; ++x) {
                const std::uint8_t bits = scan_bits(luma, paths, p.edge_threshold, x, y);
                const bool inside = row_inside && x >= radius && x + radius < w;
                out.at(x, y) = inside ? surround_interior(&luma.row(y)[x], kernel, bits)
                                      : surround_clipped(luma, kernel, bits, x, y);
            }
        }
    });
    return out;
}

Channel beta_map(const Channel& luma, const RbafParams& p) {
    Channel out = luma;
    for (float& v : out.samples()) {
        const double z = -p.sigmoid_gain * (static_cast<double>(v) - 0.5);
        v = static_cast<float>(1.0 - 1.0 / (1.0 + std::exp(z)));
    }
    return out;
}

Channel reflectance(const Channel& luma, const Channel& mask, const Channel& beta,
                    const RbafParams& p) {
    if (!luma.same_shape(mask) || !luma.same_shape(beta)) {
        throw ArgumentError("reflectance inputs differ in size");
    }
    Channel out(luma.width(), luma.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double log_l = std::log(std::max(static_cast<double>(luma[i]), p.log_floor));
        const double log_m = std::log(std::max(static_cast<double>(mask[i]), p.log_floor));
        out[i] = static_cast<float>(log_l - static_cast<double>(beta[i]) * log_m);
    }
    return out;
}

Channel log_ratio(const Channel& luma, const Channel& mask, const RbafParams& p) {
    if (!luma.same_shape(mask)) throw ArgumentError("log-ratio inputs differ in size");
    Channel out(luma.width(), luma.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<float>(std::log(std::max(static_cast<double>(luma[i]), p.log_floor)) -
                                    std::log(std::max(static_cast<double>(mask[i]), p.log_floor)));
    }
    return out;
}

StretchResult normalize_stretch(const Channel& refl) {
    StretchResult res{refl};
    const auto [lo, hi] = std::ranges::minmax_element(refl.samples());
    res.min = *lo;
    res.max = *hi;
    const double span = res.max - res.min;
    if (!(span >= 1e-9)) {
        res.degenerate = true;
        for (float& v : res.plane.samples()) v = 0.5f;
        return res;
    }
    for (float& v : res.plane.samples()) {
        v = static_cast<float>((static_cast<double>(v) - res.min) / span);
    }
    return res;
}

}  // namespace nightenh
