#include "zoom3d/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zoom3d/error.hpp"

namespace zoom3d {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
        case ErrorKind::Format: return "format";
        case ErrorKind::DegenerateInput: return "degenerate-input";
    }
    return "unknown";
}

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
    if (width < 1 || height < 1 || channels < 1) {
        throw InvalidArgument("image dimensions must be positive");
    }
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (width < 1 || height < 1 || channels < 1) {
        throw InvalidArgument("image dimensions must be positive");
    }
    if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
        throw InvalidArgument("image data size does not match dimensions");
    }
}

Mask::Mask(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw InvalidArgument("mask dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t Mask::count_valid() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

double Mask::valid_fraction() const noexcept {
    return data_.empty() ? 0.0 : static_cast<double>(count_valid()) / static_cast<double>(data_.size());
}

void validate(const Image& img) {
    if (img.empty()) throw InvalidArgument("empty image");
    if (img.width() < 2 || img.height() < 2) throw InvalidArgument("image must be at least 2x2");
    if (img.channels() != 1 && img.channels() != 3) {
        throw InvalidArgument("image must have 1 or 3 channels, got " + std::to_string(img.channels()));
    }
}

void bilinear_sample_unchecked(const Image& img, double x, double y, float* out) noexcept {
    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;

    const float* data = img.data().data();
    const float* p00 = data + (static_cast<std::size_t>(y0) * w + x0) * c;
    const float* p10 = data + (static_cast<std::size_t>(y0) * w + x1) * c;
    const float* p01 = data + (static_cast<std::size_t>(y1) * w + x0) * c;
    const float* p11 = data + (static_cast<std::size_t>(y1) * w + x1) * c;
    // lerp as a + f * (b - a): exact for a == b and never leaves [min, max].
    for (int k = 0; k < c; ++k) {
        const double top = p00[k] + fx * (static_cast<double>(p10[k]) - p00[k]);
        const double bottom = p01[k] + fx * (static_cast<double>(p11[k]) - p01[k]);
        out[k] = static_cast<float>(top + fy * (bottom - top));
    }
}

void bilinear_sample(const Image& img, double x, double y, std::span<float> out) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw InvalidArgument("bilinear_sample: non-finite coordinate");
    }
    if (img.empty()) throw InvalidArgument("bilinear_sample: empty image");
    if (out.size() < static_cast<std::size_t>(img.channels())) {
        throw InvalidArgument("bilinear_sample: output span too small");
    }
    bilinear_sample_unchecked(img, x, y, out.data());
}

float bilinear_sample(const Image& img, double x, double y, int channel) {
    if (channel < 0 || channel >= img.channels()) {
        throw InvalidArgument("bilinear_sample: channel out of range");
    }
    float values[8];
    std::vector<float> wide;
    float* buf = values;
    if (img.channels() > 8) {
        wide.resize(img.channels());
        buf = wide.data();
    }
    bilinear_sample(img, x, y, std::span<float>(buf, img.channels()));
    return buf[channel];
}

}  // namespace zoom3d
