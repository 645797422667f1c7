#include "zoom3d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zoom3d/error.hpp"

namespace zoom3d {

namespace {

void require_same_shape(const VectorField& f, const DisparityMap& d, const char* what) {
    if (f.width() != d.width() || f.height() != d.height()) {
        throw InvalidArgument(std::string(what) + ": shape mismatch (" + std::to_string(f.width()) + "x" +
                              std::to_string(f.height()) + " vs " + std::to_string(d.width()) + "x" +
                              std::to_string(d.height()) + ")");
    }
}

template <class Field>
Field scaled(const VectorField& grid, double factor) {
    Field out(grid.width(), grid.height());
    const auto src = grid.data();
    auto dst = out.data();
    const auto n = static_cast<std::ptrdiff_t>(src.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        dst[k] = static_cast<float>(factor * src[k]);
    }
    return out;
}

}  // namespace

VectorField::VectorField(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw InvalidArgument("field dimensions must be positive");
    data_.assign(2 * static_cast<std::size_t>(width) * height, 0.0f);
}

ZoomParams::ZoomParams(double zoom_factor, int channels, double max_zoom_factor)
    : zoom_factor_(zoom_factor), channels_(channels), max_zoom_factor_(max_zoom_factor) {
    if (!std::isfinite(max_zoom_factor) || max_zoom_factor < 1.0) {
        throw InvalidArgument("max zoom factor must be >= 1");
    }
    if (!std::isfinite(zoom_factor) || zoom_factor < 1.0 || zoom_factor > max_zoom_factor) {
        throw InvalidArgument("zoom factor " + std::to_string(zoom_factor) + " outside [1, " +
                              std::to_string(max_zoom_factor) + "]");
    }
    if (channels < 2 || channels > 65535) {
        throw InvalidArgument("channel count must be in [2, 65535]");
    }
}

double ZoomParams::ratio(int level) const noexcept {
    if (level <= 0) return 1.0;
    if (level >= channels_ - 1) return zoom_factor_;
    return 1.0 + (static_cast<double>(level) / (channels_ - 1)) * (zoom_factor_ - 1.0);
}

std::vector<double> ZoomParams::ratios() const {
    std::vector<double> r(channels_);
    for (int n = 0; n < channels_; ++n) r[n] = ratio(n);
    return r;
}

DisparityMap::DisparityMap(int width, int height, std::vector<float> values, bool normalized)
    : width_(width), height_(height), normalized_(normalized) {
    if (width < 1 || height < 1) throw InvalidArgument("disparity dimensions must be positive");
    if (values.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("disparity data size does not match dimensions");
    }
    for (float v : values) {
        if (!std::isfinite(v) || v < 0.0f) throw InvalidArgument("disparity values must be finite and >= 0");
        if (normalized && v > 1.0f) throw InvalidArgument("normalized disparity must lie in [0,1]");
    }
    image_ = Image(width, height, 1, std::move(values));
}

DisparityMap DisparityMap::constant(int width, int height, float value, bool normalized) {
    return DisparityMap(width, height, std::vector<float>(static_cast<std::size_t>(width) * height, value),
                        normalized);
}

Grid identity_grid(int width, int height) {
    if (width < 2 || height < 2) throw InvalidArgument("identity_grid: dimensions must be >= 2");
    Grid grid(width, height);
    const double cx = center_x(width);
    const double cy = center_y(height);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            grid.x(i, j) = static_cast<float>(i - cx);
            grid.y(i, j) = static_cast<float>(j - cy);
        }
    }
    return grid;
}

FlowField zoom_in_flow(const ZoomParams& params, const Grid& grid) {
    return scaled<FlowField>(grid, 1.0 - params.zoom_factor());
}

FlowField zoom_out_flow(const ZoomParams& params, const Grid& grid) {
    return scaled<FlowField>(grid, 1.0 / params.zoom_factor() - 1.0);
}

DisparityMap normalize_disparity(const DisparityMap& d) {
    const auto values = d.values();
    if (values.empty()) throw InvalidArgument("normalize_disparity: empty map");
    const float peak = *std::max_element(values.begin(), values.end());
    if (!(peak > 0.0f)) {
        throw DegenerateInput("disparity map is all zero; cannot normalize");
    }
    std::vector<float> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [peak](float v) { return v / peak; });
    return DisparityMap::normalized_map(d.width(), d.height(), std::move(out));
}

DisparityMap resize_disparity(const DisparityMap& d, int width, int height) {
    if (d.width() == width && d.height() == height) return d;
    Image resized = resize_bilinear(d.as_image(), width, height);
    const auto v = resized.data();
    return DisparityMap(width, height, std::vector<float>(v.begin(), v.end()), d.normalized());
}

FlowField weighted_zoom_flow(const FlowField& f_in, const DisparityMap& dn) {
    require_same_shape(f_in, dn, "weighted_zoom_flow");
    FlowField out(f_in.width(), f_in.height());
    const auto src = f_in.data();
    const auto weight = dn.values();
    auto dst = out.data();
    const auto n = static_cast<std::ptrdiff_t>(weight.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        dst[2 * k] = src[2 * k] * weight[k];
        dst[2 * k + 1] = src[2 * k + 1] * weight[k];
    }
    return out;
}

Mask disocclusion_mask(const ZoomParams& params, const DisparityMap& dn, const Grid& grid) {
    require_same_shape(grid, dn, "disocclusion_mask");
    const int w = grid.width();
    const int h = grid.height();
    const double half_w = center_x(w);
    const double half_h = center_y(h);
    const double gain = params.zoom_factor() - 1.0;
    Mask mask(w, h);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const double scale = 1.0 + gain * dn.at(i, j);
            const double sx = grid.x(i, j) * scale;
            const double sy = grid.y(i, j) * scale;
            mask.at(i, j) = (std::abs(sx) <= half_w && std::abs(sy) <= half_h) ? 1 : 0;
        }
    }
    return mask;
}

}  // namespace zoom3d
