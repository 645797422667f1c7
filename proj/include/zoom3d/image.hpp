#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zoom3d {

/// H x W x C raster of intensities in [0,1].
///
/// Layout is row-major and channel-interleaved: the value of channel `c` at
/// column `x`, row `y` lives at `(y * width + x) * channels + c`. Files are
/// converted to this layout at the I/O boundary only.
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels, float fill = 0.0f);
    Image(int width, int height, int channels, std::vector<float> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const noexcept { return data_.empty(); }

    float& at(int x, int y, int c = 0) noexcept { return data_[index(x, y, c)]; }
    float at(int x, int y, int c = 0) const noexcept { return data_[index(x, y, c)]; }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    std::span<float> row(int y) noexcept {
        return std::span<float>(data_).subspan(static_cast<std::size_t>(y) * width_ * channels_,
                                               static_cast<std::size_t>(width_) * channels_);
    }
    std::span<const float> row(int y) const noexcept {
        return std::span<const float>(data_).subspan(static_cast<std::size_t>(y) * width_ * channels_,
                                                     static_cast<std::size_t>(width_) * channels_);
    }

    bool same_shape(const Image& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y, int c) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

/// Binary per-pixel mask; every value is exactly 0 or 1.
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, std::uint8_t fill = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

    std::uint8_t& at(int x, int y) noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::uint8_t at(int x, int y) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    std::span<std::uint8_t> data() noexcept { return data_; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

    std::size_t count_valid() const noexcept;
    double valid_fraction() const noexcept;

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Center-origin coordinates: raster column i maps to i - (W-1)/2.
inline double center_x(int width) noexcept { return 0.5 * (width - 1); }
inline double center_y(int height) noexcept { return 0.5 * (height - 1); }

/// Bilinear sample of one channel at a continuous raster coordinate.
/// Coordinates outside the raster are clamped to the edge.
/// Throws InvalidArgument for non-finite coordinates.
float bilinear_sample(const Image& img, double x, double y, int channel);

/// All channels at once; `out` must hold img.channels() values.
void bilinear_sample(const Image& img, double x, double y, std::span<float> out);

/// Unchecked hot-path variant used by the kernels. Coordinates must be finite.
void bilinear_sample_unchecked(const Image& img, double x, double y, float* out) noexcept;

/// Magnify about the image center by `ratio` (>= 1); output has the input's
/// dimensions, so the crop is implicit.
Image upscale(const Image& img, double ratio);

/// Bilinear resize to a new resolution (corner-aligned sample grid).
Image resize_bilinear(const Image& img, int width, int height);

/// Throws InvalidArgument unless `img` is a well-formed raster.
void validate(const Image& img);

}  // namespace zoom3d
