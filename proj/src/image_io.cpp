#include "nightenh/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "nightenh/error.hpp"

namespace nightenh {
namespace {

namespace fs = std::filesystem;

std::vector<unsigned char> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

ImageF from_interleaved(const unsigned char* px, int width, int height, int channels) {
    ImageF img(width, height, channels);
    const std::size_t n = img.pixel_count();
    for (int c = 0; c < channels; ++c) {
        auto plane = img.plane_view(c);
        for (std::size_t i = 0; i < n; ++i) {
            plane[i] = static_cast<float>(px[i * channels + c]) / 255.0f;
        }
    }
    return img;
}

std::vector<unsigned char> to_interleaved(const ImageF& img, int channels) {
    const std::size_t n = img.pixel_count();
    std::vector<unsigned char> out(n * channels);
    for (int c = 0; c < channels; ++c) {
        const auto plane = img.plane_view(img.channels() == 1 ? 0 : c);
        for (std::size_t i = 0; i < n; ++i) out[i * channels + c] = quantize8(plane[i]);
    }
    return out;
}

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PnmHeader {
public:
    PnmHeader(const std::vector<unsigned char>& bytes, const fs::path& path)
        : bytes_(bytes), path_(path) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw IoError("truncated header in " + path_.string());
        if (!std::isdigit(bytes_[pos_])) {
            throw FormatError("malformed netpbm header in " + path_.string());
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_++] - '0');
            if (value > (1L << 24)) throw FormatError("netpbm header value too large");
        }
        return static_cast<int>(value);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size()) throw IoError("truncated header in " + path_.string());
        if (!std::isspace(bytes_[pos_])) {
            throw FormatError("malformed netpbm header in " + path_.string());
        }
        return pos_ + 1;
    }

    void skip(std::size_t n) { pos_ += n; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    const fs::path& path_;
    std::size_t pos_ = 0;
};

ImageF load_pnm(const std::vector<unsigned char>& bytes, const fs::path& path) {
    const int channels = bytes[1] == '6' ? 3 : 1;
    PnmHeader header(bytes, path);
    header.skip(2);
    const int width = header.next_int();
    const int height = header.next_int();
    const int maxval = header.next_int();
    if (width < 1 || height < 1) throw FormatError("empty netpbm image: " + path.string());
    if (maxval != 255) {
        throw FormatError("only 8-bit netpbm (maxval 255) is supported, got maxval " +
                          std::to_string(maxval));
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t need = static_cast<std::size_t>(width) * height * channels;
    if (bytes.size() < offset + need) throw IoError("truncated raster in " + path.string());
    return from_interleaved(bytes.data() + offset, width, height, channels);
}

ImageF load_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        throw IoError("cannot decode " + path.string() + ": " + png.message);
    }
    if (png.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&png);
        throw FormatError("only 8-bit PNG is supported: " + path.string());
    }
    const bool color = png.format & PNG_FORMAT_FLAG_COLOR;
    const int channels = color ? 3 : 1;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<unsigned char> px(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, px.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("cannot decode " + path.string() + ": " + msg);
    }
    return from_interleaved(px.data(), static_cast<int>(png.width),
                            static_cast<int>(png.height), channels);
}

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

unsigned char quantize8(float v) {
    const float c = std::clamp(v, 0.0f, 1.0f);
    return static_cast<unsigned char>(std::lround(c * 255.0f));
}

ImageF load_image(const fs::path& path) {
    const auto bytes = read_file(path);
    static constexpr std::array<unsigned char, 8> kPngSig = {0x89, 'P', 'N', 'G',
                                                           '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= kPngSig.size() &&
        std::equal(kPngSig.begin(), kPngSig.end(), bytes.begin())) {
        return load_png(bytes, path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
        return load_pnm(bytes, path);
    }
    if (bytes.empty()) throw IoError("empty file: " + path.string());
    throw FormatError("unsupported image format: " + path.string());
}

void save_image(const ImageF& img, const fs::path& path) {
    if (img.empty()) throw ArgumentError("cannot save an empty image");
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        const int channels = img.channels();
        auto px = to_interleaved(img, channels);
        png_image png{};
        png.version = PNG_IMAGE_VERSION;
        png.width = static_cast<png_uint_32>(img.width());
        png.height = static_cast<png_uint_32>(img.height());
        png.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
        if (!png_image_write_to_file(&png, path.string().c_str(), 0, px.data(), 0, nullptr)) {
            throw IoError("cannot write " + path.string() + ": " + png.message);
        }
        return;
    }
    int channels = 0;
    if (ext == ".ppm") {
        channels = 3;
    } else if (ext == ".pgm") {
        if (img.channels() != 1) throw FormatError("PGM output needs a gray image: " + path.string());
        channels = 1;
    } else {
        throw FormatError("unsupported output extension '" + ext + "'");
    }
    const auto px = to_interleaved(img, channels);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << (channels == 3 ? "P6" : "P5") << '\n'
        << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace nightenh
