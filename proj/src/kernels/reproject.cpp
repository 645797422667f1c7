#include "zoom3d/reproject.hpp"

#include "zoom3d/error.hpp"

namespace zoom3d {

Image backward_warp(const Image& img, const FlowField& flow) {
    validate(img);
    if (flow.width() != img.width() || flow.height() != img.height()) {
        throw InvalidArgument("backward_warp: flow and image dimensions differ");
    }
    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    Image out(w, h, c);

    // In raster terms p - flow(p) is simply (x - fx, y - fy); the center
    // offsets cancel.
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        float* dst = out.row(y).data();
        for (int x = 0; x < w; ++x) {
            bilinear_sample_unchecked(img, static_cast<double>(x) - flow.x(x, y),
                                      static_cast<double>(y) - flow.y(x, y), dst + x * c);
        }
    }
    return out;
}

Image composite_zoom_out(const Image& z_out, const Image& original, const Mask& mask) {
    if (!z_out.same_shape(original) || mask.width() != z_out.width() || mask.height() != z_out.height()) {
        throw InvalidArgument("composite_zoom_out: dimension mismatch");
    }
    const int c = z_out.channels();
    Image out(z_out.width(), z_out.height(), c);
    const auto a = z_out.data();
    const auto b = original.data();
    const auto m = mask.data();
    auto dst = out.data();
    const auto pixels = static_cast<std::ptrdiff_t>(mask.pixel_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < pixels; ++p) {
        const auto& src = m[p] ? a : b;
        for (int k = 0; k < c; ++k) dst[p * c + k] = src[p * c + k];
    }
    return out;
}

}  // namespace zoom3d
