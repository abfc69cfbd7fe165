#include "nightenh/image.hpp"

#include <algorithm>
#include <string>

#include "nightenh/error.hpp"

namespace nightenh {
namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw ArgumentError("image dimensions must be positive, got " +
                            std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Channel::Channel(int width, int height, float fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Channel::Channel(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * height) {
        throw ArgumentError("channel data length does not match dimensions");
    }
}

ImageF::ImageF(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
    check_dims(width, height);
    if (channels != 1 && channels != 3) {
        throw ArgumentError("images have 1 or 3 channels, got " + std::to_string(channels));
    }
    data_.assign(pixel_count() * channels, fill);
}

ImageF::ImageF(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height);
    if (channels != 1 && channels != 3) {
        throw ArgumentError("images have 1 or 3 channels, got " + std::to_string(channels));
    }
    if (data_.size() != pixel_count() * channels) {
        throw ArgumentError("image data length does not match dimensions");
    }
}

ImageF ImageF::from_planes(const Channel& r, const Channel& g, const Channel& b) {
    if (!r.same_shape(g) || !r.same_shape(b)) {
        throw ArgumentError("planes differ in size");
    }
    ImageF img(r.width(), r.height(), 3);
    img.set_plane(0, r);
    img.set_plane(1, g);
    img.set_plane(2, b);
    return img;
}

ImageF ImageF::from_plane(const Channel& gray) {
    ImageF img(gray.width(), gray.height(), 1);
    img.set_plane(0, gray);
    return img;
}

Channel ImageF::plane(int c) const {
    const auto view = plane_view(c);
    return Channel(width_, height_, std::vector<float>(view.begin(), view.end()));
}

void ImageF::set_plane(int c, const Channel& plane) {
    if (plane.width() != width_ || plane.height() != height_) {
        throw ArgumentError("plane size does not match image");
    }
    std::ranges::copy(plane.samples(), plane_view(c).begin());
}

ImageF clamp01(const ImageF& img) {
    ImageF out = img;
    for (float& v : out.samples()) v = std::clamp(v, 0.0f, 1.0f);
    return out;
}

Channel clamp01(const Channel& chan) {
    Channel out = chan;
    for (float& v : out.samples()) v = std::clamp(v, 0.0f, 1.0f);
    return out;
}

ImageF to_rgb(const ImageF& img) {
    if (img.channels() == 3) return img;
    const Channel gray = img.plane(0);
    return ImageF::from_planes(gray, gray, gray);
}

Channel luminance(const ImageF& img) {
    if (img.channels() == 1) return img.plane(0);
    Channel out(img.width(), img.height());
    const auto r = img.plane_view(0);
    const auto g = img.plane_view(1);
    const auto b = img.plane_view(2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<float>((double(r[i]) + g[i] + b[i]) / 3.0);
    }
    return out;
}

}  // namespace nightenh
