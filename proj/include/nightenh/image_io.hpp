#pragma once

#include <filesystem>

#include "nightenh/image.hpp"

namespace nightenh {

// Reads 8-bit PNG or binary PPM (P6) / PGM (P5). The format is chosen by
// content, not extension. Samples are scaled by 1/255.
ImageF load_image(const std::filesystem::path& path);

// Writes PNG (.png), PPM (.ppm) or PGM (.pgm) by extension. Samples are
// clamped to [0,1] and rounded to the nearest 8-bit level.
void save_image(const ImageF& img, const std::filesystem::path& path);

// Nearest 8-bit level of a sample after clamping.
unsigned char quantize8(float v);

}  // namespace nightenh
