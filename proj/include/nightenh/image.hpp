#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nightenh {

// Single floating-point plane, row-major.
class Channel {
public:
    Channel() = default;
    Channel(int width, int height, float fill = 0.0f);
    Channel(int width, int height, std::vector<float> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    float at(int x, int y) const { return data_[index(x, y)]; }
    float& at(int x, int y) { return data_[index(x, y)]; }
    float operator[](std::size_t i) const { return data_[i]; }
    float& operator[](std::size_t i) { return data_[i]; }

    std::span<const float> row(int y) const {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }
    std::span<float> row(int y) {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }

    std::span<const float> samples() const { return data_; }
    std::span<float> samples() { return data_; }

    bool same_shape(const Channel& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Channel&, const Channel&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

// Planar (channel-major) image with 1 or 3 channels; samples nominally in [0,1].
class ImageF {
public:
    ImageF() = default;
    ImageF(int width, int height, int channels, float fill = 0.0f);
    ImageF(int width, int height, int channels, std::vector<float> data);

    static ImageF from_planes(const Channel& r, const Channel& g, const Channel& b);
    static ImageF from_plane(const Channel& gray);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * height_;
    }
    bool empty() const { return data_.empty(); }

    float at(int c, int x, int y) const { return data_[index(c, x, y)]; }
    float& at(int c, int x, int y) { return data_[index(c, x, y)]; }

    std::span<const float> plane_view(int c) const {
        return {data_.data() + c * pixel_count(), pixel_count()};
    }
    std::span<float> plane_view(int c) {
        return {data_.data() + c * pixel_count(), pixel_count()};
    }
    Channel plane(int c) const;
    void set_plane(int c, const Channel& plane);

    std::span<const float> samples() const { return data_; }
    std::span<float> samples() { return data_; }

    bool same_shape(const ImageF& other) const {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }

    friend bool operator==(const ImageF&, const ImageF&) = default;

private:
    std::size_t index(int c, int x, int y) const {
        return c * pixel_count() + static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

ImageF clamp01(const ImageF& img);
Channel clamp01(const Channel& chan);

// Gray input becomes three identical planes; color input is returned as is.
ImageF to_rgb(const ImageF& img);

// (R+G+B)/3 for color input, the plane itself for gray.
Channel luminance(const ImageF& img);

}  // namespace nightenh
