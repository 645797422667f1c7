#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "zoom3d/geometry.hpp"
#include "zoom3d/image.hpp"

namespace zoom3d {

/// N center-magnified copies of one image, ratios evenly spaced from 1 to
/// the zoom factor.
struct ImagePyramid {
    std::vector<Image> levels;
    std::vector<double> ratios;

    int size() const noexcept { return static_cast<int>(levels.size()); }
};

/// H x W x N per-pixel values, channel-interleaved (the N values of one
/// pixel are contiguous). Shared storage for logits and selection volumes.
class ChannelVolume {
public:
    ChannelVolume() = default;
    ChannelVolume(int width, int height, int channels, float fill = 0.0f);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

    float& at(int x, int y, int n) noexcept { return data_[offset(x, y) + n]; }
    float at(int x, int y, int n) const noexcept { return data_[offset(x, y) + n]; }

    std::span<float> pixel(int x, int y) noexcept {
        return std::span<float>(data_).subspan(offset(x, y), channels_);
    }
    std::span<const float> pixel(int x, int y) const noexcept {
        return std::span<const float>(data_).subspan(offset(x, y), channels_);
    }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    /// Channel n as a single-channel Image.
    Image channel_image(int n) const;

    friend bool operator==(const ChannelVolume&, const ChannelVolume&) = default;

private:
    std::size_t offset(int x, int y) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

/// Unconstrained finite pre-softmax values.
struct SelectionLogits : ChannelVolume {
    using ChannelVolume::ChannelVolume;
};

/// Per-pixel blending weights on the probability simplex.
struct SelectionVolume : ChannelVolume {
    using ChannelVolume::ChannelVolume;
};

ImagePyramid build_pyramid(const Image& img, const ZoomParams& params);

/// Channel-wise softmax, stabilized by subtracting the per-pixel maximum.
SelectionVolume softmax_volume(const SelectionLogits& logits);

/// Magnifies logit channel n about the center by params.ratio(n).
SelectionLogits expand_logits(const SelectionLogits& logits, const ZoomParams& params);

/// Z_in(p) = sum_n levels[n](p) * volume[n](p), per color channel.
Image blend(const ImagePyramid& pyramid, const SelectionVolume& volume);

/// Index of the selected pyramid level for every output pixel of the
/// disparity-driven selection rule (see oracle_volume).
struct ChannelMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> index;

    std::uint16_t at(int x, int y) const noexcept {
        return index[static_cast<std::size_t>(y) * width + x];
    }
};

/// Analytic stand-in for a learned selection volume. At output pixel p each
/// level n implies a magnification m_n = 1 + (zf-1) * Dn(p / r_n), with Dn
/// sampled at the level's source location; the level minimizing |r_n - m_n|
/// is selected, ties going to the larger n (nearer content wins).
ChannelMap oracle_channels(const DisparityMap& dn, const ZoomParams& params);

/// One-hot volume built from oracle_channels().
SelectionVolume oracle_volume(const DisparityMap& dn, const ZoomParams& params);

/// Equivalent to blend(build_pyramid(img), oracle_volume(dn)) without
/// materializing either: each output pixel samples only its selected level.
Image render_zoom_in(const Image& img, const DisparityMap& dn, const ZoomParams& params);

/// Same as above for an already computed channel map.
Image render_with_channels(const Image& img, const ChannelMap& channels, const ZoomParams& params);

/// Forward-warping baseline. Every source pixel p is splatted to the nearest
/// raster position of p * (1 + (zf-1) Dn(p)). Collisions keep the larger Dn,
/// and among equal Dn the earlier pixel in row-major scan order. Uncovered
/// pixels are 0 with mask 0.
std::pair<Image, Mask> forward_splat(const Image& img, const DisparityMap& dn, const ZoomParams& params);

/// Throws InvalidArgument unless every pixel's weights are >= 0 and sum to 1
/// within `tol`.
void check_simplex(const SelectionVolume& volume, double tol = 1e-5);

}  // namespace zoom3d
