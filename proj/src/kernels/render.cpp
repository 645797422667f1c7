#include "zoom3d/render.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>

#include "detail/coords.hpp"
#include "zoom3d/error.hpp"

namespace zoom3d {

ChannelVolume::ChannelVolume(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
    if (width < 1 || height < 1 || channels < 1) {
        throw InvalidArgument("volume dimensions must be positive");
    }
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image ChannelVolume::channel_image(int n) const {
    if (n < 0 || n >= channels_) throw InvalidArgument("channel index out of range");
    Image out(width_, height_, 1);
    auto dst = out.data();
    for (std::size_t k = 0; k < pixel_count(); ++k) dst[k] = data_[k * channels_ + n];
    return out;
}

ImagePyramid build_pyramid(const Image& img, const ZoomParams& params) {
    validate(img);
    ImagePyramid pyramid;
    pyramid.ratios = params.ratios();
    pyramid.levels.reserve(pyramid.ratios.size());
    for (double r : pyramid.ratios) pyramid.levels.push_back(upscale(img, r));
    return pyramid;
}

SelectionVolume softmax_volume(const SelectionLogits& logits) {
    const int n = logits.channels();
    SelectionVolume out(logits.width(), logits.height(), n);
    const auto src = logits.data();
    auto dst = out.data();
    const auto pixels = static_cast<std::ptrdiff_t>(logits.pixel_count());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < pixels; ++p) {
        const float* in = src.data() + p * n;
        float* w = dst.data() + p * n;
        const float peak = *std::max_element(in, in + n);
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += std::exp(static_cast<double>(in[k]) - peak);
        for (int k = 0; k < n; ++k) {
            w[k] = static_cast<float>(std::exp(static_cast<double>(in[k]) - peak) / sum);
        }
    }
    return out;
}

SelectionLogits expand_logits(const SelectionLogits& logits, const ZoomParams& params) {
    const int w = logits.width();
    const int h = logits.height();
    const int n = logits.channels();
    if (n != params.channels()) throw InvalidArgument("expand_logits: channel count mismatch");

    const double cx = center_x(w);
    const double cy = center_y(h);
    const auto ratios = params.ratios();
    SelectionLogits out(w, h, n);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int k = 0; k < n; ++k) {
                const double sx = std::clamp(detail::magnified_source(x, cx, ratios[k]), 0.0, w - 1.0);
                const double sy = std::clamp(detail::magnified_source(y, cy, ratios[k]), 0.0, h - 1.0);
                const int x0 = static_cast<int>(sx);
                const int y0 = static_cast<int>(sy);
                const int x1 = std::min(x0 + 1, w - 1);
                const int y1 = std::min(y0 + 1, h - 1);
                const double fx = sx - x0;
                const double fy = sy - y0;
                const double a = logits.at(x0, y0, k);
                const double b = logits.at(x1, y0, k);
                const double c = logits.at(x0, y1, k);
                const double d = logits.at(x1, y1, k);
                const double top = a + fx * (b - a);
                const double bottom = c + fx * (d - c);
                out.at(x, y, k) = static_cast<float>(top + fy * (bottom - top));
            }
        }
    }
    return out;
}

Image blend(const ImagePyramid& pyramid, const SelectionVolume& volume) {
    const int n = pyramid.size();
    if (n == 0) throw InvalidArgument("blend: empty pyramid");
    if (volume.channels() != n) {
        throw InvalidArgument("blend: volume has " + std::to_string(volume.channels()) + " channels, pyramid has " +
                              std::to_string(n) + " levels");
    }
    const Image& first = pyramid.levels.front();
    for (const Image& level : pyramid.levels) {
        if (!level.same_shape(first)) throw InvalidArgument("blend: pyramid levels differ in shape");
    }
    if (volume.width() != first.width() || volume.height() != first.height()) {
        throw InvalidArgument("blend: volume and pyramid dimensions differ");
    }

    const int w = first.width();
    const int h = first.height();
    const int c = first.channels();
    Image out(w, h, c);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto weights = volume.pixel(x, y);
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) {
                    acc += static_cast<double>(pyramid.levels[k].at(x, y, ch)) * weights[k];
                }
                out.at(x, y, ch) = static_cast<float>(acc);
            }
        }
    }
    return out;
}

namespace {

// Bilinear taps along one axis for every raster position and pyramid level.
// Same arithmetic as bilinear_sample_unchecked on a single channel.
struct AxisTaps {
    std::vector<int> lo;
    std::vector<int> hi;
    std::vector<double> frac;
};

AxisTaps axis_taps(int extent, const std::vector<double>& ratios) {
    const double center = (extent - 1) / 2.0;
    AxisTaps t;
    const std::size_t total = ratios.size() * static_cast<std::size_t>(extent);
    t.lo.resize(total);
    t.hi.resize(total);
    t.frac.resize(total);
    for (std::size_t k = 0; k < ratios.size(); ++k) {
        for (int i = 0; i < extent; ++i) {
            const double s = std::clamp(detail::magnified_source(i, center, ratios[k]), 0.0, extent - 1.0);
            const int lo = static_cast<int>(s);
            const std::size_t at = k * extent + i;
            t.lo[at] = lo;
            t.hi[at] = std::min(lo + 1, extent - 1);
            t.frac[at] = s - lo;
        }
    }
    return t;
}

}  // namespace

ChannelMap oracle_channels(const DisparityMap& dn, const ZoomParams& params) {
    const int w = dn.width();
    const int h = dn.height();
    const int n = params.channels();
    const double gain = params.zoom_factor() - 1.0;
    const auto ratios = params.ratios();
    const float* disparity = dn.values().data();
    const AxisTaps cols = axis_taps(w, ratios);
    const AxisTaps rows = axis_taps(h, ratios);

    ChannelMap map{w, h, std::vector<std::uint16_t>(static_cast<std::size_t>(w) * h, 0)};

#pragma omp parallel
    {
        std::vector<double> best_err(w);
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            std::uint16_t* best = map.index.data() + static_cast<std::size_t>(y) * w;
            std::fill(best_err.begin(), best_err.end(), INFINITY);
            // Levels ascend, and `<=` hands ties to the larger ratio.
            for (int k = 0; k < n; ++k) {
                const std::size_t ry = static_cast<std::size_t>(k) * h + y;
                const float* r0 = disparity + static_cast<std::size_t>(rows.lo[ry]) * w;
                const float* r1 = disparity + static_cast<std::size_t>(rows.hi[ry]) * w;
                const double fy = rows.frac[ry];
                const int* x0 = cols.lo.data() + static_cast<std::size_t>(k) * w;
                const int* x1 = cols.hi.data() + static_cast<std::size_t>(k) * w;
                const double* fx = cols.frac.data() + static_cast<std::size_t>(k) * w;
                const double target = ratios[k];
                for (int x = 0; x < w; ++x) {
                    const double top = r0[x0[x]] + fx[x] * (static_cast<double>(r0[x1[x]]) - r0[x0[x]]);
                    const double bottom = r1[x0[x]] + fx[x] * (static_cast<double>(r1[x1[x]]) - r1[x0[x]]);
                    const float d = static_cast<float>(top + fy * (bottom - top));
                    const double err = std::abs(target - (1.0 + gain * d));
                    if (err <= best_err[x]) {
                        best_err[x] = err;
                        best[x] = static_cast<std::uint16_t>(k);
                    }
                }
            }
        }
    }
    return map;
}

SelectionVolume oracle_volume(const DisparityMap& dn, const ZoomParams& params) {
    const ChannelMap map = oracle_channels(dn, params);
    SelectionVolume volume(map.width, map.height, params.channels(), 0.0f);
    auto dst = volume.data();
    const auto pixels = static_cast<std::ptrdiff_t>(map.index.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < pixels; ++p) {
        dst[p * params.channels() + map.index[p]] = 1.0f;
    }
    return volume;
}

Image render_with_channels(const Image& img, const ChannelMap& channels, const ZoomParams& params) {
    validate(img);
    if (channels.width != img.width() || channels.height != img.height()) {
        throw InvalidArgument("render: channel map and image dimensions differ");
    }
    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    const double cx = center_x(w);
    const double cy = center_y(h);
    const auto ratios = params.ratios();
    Image out(w, h, c);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        float* dst = out.row(y).data();
        for (int x = 0; x < w; ++x) {
            const double r = ratios[channels.at(x, y)];
            bilinear_sample_unchecked(img, detail::magnified_source(x, cx, r),
                                      detail::magnified_source(y, cy, r), dst + x * c);
        }
    }
    return out;
}

Image render_zoom_in(const Image& img, const DisparityMap& dn, const ZoomParams& params) {
    if (dn.width() != img.width() || dn.height() != img.height()) {
        throw InvalidArgument("render: disparity and image dimensions differ");
    }
    return render_with_channels(img, oracle_channels(dn, params), params);
}

std::pair<Image, Mask> forward_splat(const Image& img, const DisparityMap& dn, const ZoomParams& params) {
    validate(img);
    if (dn.width() != img.width() || dn.height() != img.height()) {
        throw InvalidArgument("forward_splat: disparity and image dimensions differ");
    }
    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    const double cx = center_x(w);
    const double cy = center_y(h);
    const double gain = params.zoom_factor() - 1.0;
    const std::size_t pixels = img.pixel_count();
    if (pixels >= 0xFFFFFFFFull) throw InvalidArgument("forward_splat: image too large");

    // Depth key per target: high word = Dn bits (monotone for Dn >= 0), low
    // word = inverted source index so earlier pixels win ties. 0 = empty.
    std::vector<std::uint64_t> keys(pixels, 0);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const float d = dn.at(x, y);
            const double scale = 1.0 + gain * d;
            const double tx = std::floor((x - cx) * scale + cx + 0.5);
            const double ty = std::floor((y - cy) * scale + cy + 0.5);
            if (tx < 0.0 || ty < 0.0 || tx > w - 1.0 || ty > h - 1.0) continue;
            const std::size_t src = static_cast<std::size_t>(y) * w + x;
            const std::uint64_t key = (static_cast<std::uint64_t>(std::bit_cast<std::uint32_t>(d)) << 32) |
                                      (0xFFFFFFFFull - src);
            std::atomic_ref<std::uint64_t> slot(keys[static_cast<std::size_t>(ty) * w + static_cast<std::size_t>(tx)]);
            std::uint64_t current = slot.load(std::memory_order_relaxed);
            while (key > current && !slot.compare_exchange_weak(current, key, std::memory_order_relaxed)) {
            }
        }
    }

    Image out(w, h, c, 0.0f);
    Mask mask(w, h, 0);
    const auto src_data = img.data();
    auto dst_data = out.data();
    auto mask_data = mask.data();
    const auto count = static_cast<std::ptrdiff_t>(pixels);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
        const std::uint64_t key = keys[t];
        if (key == 0) continue;
        const std::size_t src = 0xFFFFFFFFull - (key & 0xFFFFFFFFull);
        for (int k = 0; k < c; ++k) dst_data[t * c + k] = src_data[src * c + k];
        mask_data[t] = 1;
    }
    return {std::move(out), std::move(mask)};
}

void check_simplex(const SelectionVolume& volume, double tol) {
    const int n = volume.channels();
    const auto data = volume.data();
    for (std::size_t p = 0; p < volume.pixel_count(); ++p) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const float v = data[p * n + k];
            if (!(v >= 0.0f)) throw InvalidArgument("selection weight negative at pixel " + std::to_string(p));
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol) {
            throw InvalidArgument("selection weights sum to " + std::to_string(sum) + " at pixel " +
                                  std::to_string(p));
        }
    }
}

}  // namespace zoom3d
