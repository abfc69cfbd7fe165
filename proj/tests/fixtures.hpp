#pragma once

#include <cstdint>

#include "nightenh/image.hpp"

namespace nightenh::testing {

// Uniform samples in [lo, hi), deterministic per seed.
Channel random_channel(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f);
ImageF random_image(int w, int h, int channels, std::uint64_t seed, float lo = 0.0f,
                    float hi = 1.0f);

// Smooth colour scene with flat patches, a textured band and a bright "hat"
// shape on a darker background. Samples lie in [0.04, 0.96].
ImageF scene(int w, int h);

// Slowly varying luminance with no consecutive step above 0.01.
Channel smooth_gradient(int w, int h);

// Vertical step: `low` for x < edge_x, `high` from edge_x on.
Channel vertical_step(int w, int h, int edge_x, float low, float high);

// Bright disk of `radius` centred in the frame.
Channel bright_disk(int size, double radius, float dark, float bright);

// Horizontal ramp covering every 8-bit level `repeat` times per row.
Channel ramp256(int repeat, int rows);

}  // namespace nightenh::testing
