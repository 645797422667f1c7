#pragma once

#include <span>
#include <vector>

#include "zoom3d/image.hpp"

namespace zoom3d {

/// Two-component per-pixel field stored as interleaved (x, y) pairs,
/// row-major. Used both for coordinate grids and for displacement flows.
class VectorField {
public:
    VectorField() = default;
    VectorField(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

    float& x(int i, int j) noexcept { return data_[offset(i, j)]; }
    float& y(int i, int j) noexcept { return data_[offset(i, j) + 1]; }
    float x(int i, int j) const noexcept { return data_[offset(i, j)]; }
    float y(int i, int j) const noexcept { return data_[offset(i, j) + 1]; }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    std::size_t offset(int i, int j) const noexcept {
        return 2 * (static_cast<std::size_t>(j) * width_ + i);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Center-origin pixel coordinates: value at raster (i,j) is
/// (i - (W-1)/2, j - (H-1)/2). Half-integers are exact in float.
struct Grid : VectorField {
    using VectorField::VectorField;
};

/// Pixel displacements. Convention: a flow stores the source-to-target
/// displacement, and backward warping samples at p - flow(p).
struct FlowField : VectorField {
    using VectorField::VectorField;
};

inline constexpr double kDefaultMaxZoom = 3.0;
inline constexpr int kDefaultChannels = 32;

/// Zoom factor plus selection-volume channel count.
class ZoomParams {
public:
    /// Throws InvalidArgument unless 1 <= zoom_factor <= max_zoom_factor
    /// and channels >= 2.
    ZoomParams(double zoom_factor, int channels = kDefaultChannels,
               double max_zoom_factor = kDefaultMaxZoom);

    double zoom_factor() const noexcept { return zoom_factor_; }
    int channels() const noexcept { return channels_; }
    double max_zoom_factor() const noexcept { return max_zoom_factor_; }

    /// Upscale ratio of pyramid level n: 1 + n/(N-1) * (zoom_factor - 1).
    /// Level 0 is exactly 1 and level N-1 is exactly zoom_factor.
    double ratio(int level) const noexcept;
    std::vector<double> ratios() const;

private:
    double zoom_factor_;
    int channels_;
    double max_zoom_factor_;
};

/// Scalar disparity per pixel. Raw maps are nonnegative; normalized maps lie
/// in [0,1]. normalize_disparity() additionally guarantees a maximum of 1.
class DisparityMap {
public:
    DisparityMap() = default;
    DisparityMap(int width, int height, std::vector<float> values, bool normalized);

    static DisparityMap raw(int width, int height, std::vector<float> values) {
        return DisparityMap(width, height, std::move(values), false);
    }
    static DisparityMap normalized_map(int width, int height, std::vector<float> values) {
        return DisparityMap(width, height, std::move(values), true);
    }
    static DisparityMap constant(int width, int height, float value, bool normalized);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool normalized() const noexcept { return normalized_; }
    float at(int i, int j) const noexcept { return image_.at(i, j); }
    std::span<const float> values() const noexcept { return image_.data(); }

    /// Single-channel Image view of the values, for bilinear sampling.
    const Image& as_image() const noexcept { return image_; }

private:
    int width_ = 0;
    int height_ = 0;
    bool normalized_ = false;
    Image image_;
};

Grid identity_grid(int width, int height);

/// f_in = (1 - zoom_factor) * grid
FlowField zoom_in_flow(const ZoomParams& params, const Grid& grid);

/// f_out = (1/zoom_factor - 1) * grid
FlowField zoom_out_flow(const ZoomParams& params, const Grid& grid);

/// Divides by the maximum. Throws DegenerateInput for an all-zero map.
DisparityMap normalize_disparity(const DisparityMap& d);

/// Bilinear resample to the requested resolution (no-op when it matches).
DisparityMap resize_disparity(const DisparityMap& d, int width, int height);

/// f_win = f_in * Dn per pixel.
FlowField weighted_zoom_flow(const FlowField& f_in, const DisparityMap& dn);

/// Valid (1) iff the back re-projection sample p * (1 + (zf-1) Dn(p)) stays
/// within [-(W-1)/2, (W-1)/2] x [-(H-1)/2, (H-1)/2], edges inclusive.
Mask disocclusion_mask(const ZoomParams& params, const DisparityMap& dn, const Grid& grid);

}  // namespace zoom3d
