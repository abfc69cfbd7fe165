#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace nightenh::testing {

Channel random_channel(int w, int h, std::uint64_t seed, float lo, float hi) {
    std::mt19937_64 rng(seed);
    Channel c(w, h);
    for (float& v : c.samples()) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = static_cast<float>(lo + (hi - lo) * u);
    }
    return c;
}

ImageF random_image(int w, int h, int channels, std::uint64_t seed, float lo, float hi) {
    ImageF img(w, h, channels);
    for (int c = 0; c < channels; ++c) {
        img.set_plane(c, random_channel(w, h, seed * 7919 + c, lo, hi));
    }
    return img;
}

ImageF scene(int w, int h) {
    ImageF img(w, h, 3);
    const double cx = 0.62 * w, cy = 0.38 * h;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double u = static_cast<double>(x) / w;
            const double v = static_cast<double>(y) / h;
            // sky-to-ground gradient
            double r = 0.25 + 0.35 * v, g = 0.30 + 0.25 * v, b = 0.45 - 0.15 * v;
            // textured band
            if (v > 0.65 && v < 0.85) {
                const double t = 0.12 * std::sin(2.0 * std::numbers::pi * x / 6.0) *
                                 std::cos(2.0 * std::numbers::pi * y / 9.0);
                r += t;
                g += t;
                b += t;
            }
            // flat patches
            if (u > 0.08 && u < 0.30 && v > 0.10 && v < 0.45) { r = 0.80; g = 0.22; b = 0.18; }
            if (u > 0.12 && u < 0.40 && v > 0.50 && v < 0.62) { r = 0.15; g = 0.55; b = 0.25; }
            // hat: brim ellipse plus crown
            const double ex = (x - cx) / (0.22 * w), ey = (y - cy - 0.08 * h) / (0.04 * h);
            const bool brim = ex * ex + ey * ey < 1.0;
            const bool crown = std::abs(x - cx) < 0.11 * w && y > cy - 0.12 * h && y < cy + 0.08 * h;
            if (brim || crown) { r = 0.90; g = 0.86; b = 0.70; }
            if (crown && y > cy + 0.02 * h) { r = 0.35; g = 0.12; b = 0.40; }
            img.at(0, x, y) = static_cast<float>(std::clamp(r, 0.04, 0.96));
            img.at(1, x, y) = static_cast<float>(std::clamp(g, 0.04, 0.96));
            img.at(2, x, y) = static_cast<float>(std::clamp(b, 0.04, 0.96));
        }
    }
    return img;
}

Channel smooth_gradient(int w, int h) {
    Channel c(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            c.at(x, y) = static_cast<float>(0.3 + 0.2 * std::sin(0.05 * x) * std::cos(0.04 * y) +
                                            0.002 * x);
        }
    }
    return c;
}

Channel vertical_step(int w, int h, int edge_x, float low, float high) {
    Channel c(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) c.at(x, y) = x < edge_x ? low : high;
    }
    return c;
}

Channel bright_disk(int size, double radius, float dark, float bright) {
    Channel c(size, size);
    const double centre = (size - 1) / 2.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double d = std::hypot(x - centre, y - centre);
            c.at(x, y) = d <= radius ? bright : dark;
        }
    }
    return c;
}

Channel ramp256(int repeat, int rows) {
    Channel c(256 * repeat, rows);
    for (int y = 0; y < rows; ++y) {
        for (int x = 0; x < 256 * repeat; ++x) c.at(x, y) = static_cast<float>(x / repeat) / 255.0f;
    }
    return c;
}

}  // namespace nightenh::testing
