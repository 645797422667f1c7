#include <cmath>

#include "detail/coords.hpp"
#include "zoom3d/error.hpp"
#include "zoom3d/image.hpp"

namespace zoom3d {

Image upscale(const Image& img, double ratio) {
    validate(img);
    if (!std::isfinite(ratio) || ratio < 1.0) {
        throw InvalidArgument("upscale: ratio must be >= 1");
    }
    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    const double cx = center_x(w);
    const double cy = center_y(h);
    Image out(w, h, c);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const double sy = detail::magnified_source(y, cy, ratio);
        float* dst = out.row(y).data();
        for (int x = 0; x < w; ++x) {
            bilinear_sample_unchecked(img, detail::magnified_source(x, cx, ratio), sy, dst + x * c);
        }
    }
    return out;
}

Image resize_bilinear(const Image& img, int width, int height) {
    if (img.empty()) throw InvalidArgument("resize_bilinear: empty image");
    if (width < 1 || height < 1) throw InvalidArgument("resize_bilinear: bad target size");
    if (width == img.width() && height == img.height()) return img;

    const int c = img.channels();
    const double sx = width > 1 ? static_cast<double>(img.width() - 1) / (width - 1) : 0.0;
    const double sy = height > 1 ? static_cast<double>(img.height() - 1) / (height - 1) : 0.0;
    Image out(width, height, c);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y) {
        float* dst = out.row(y).data();
        for (int x = 0; x < width; ++x) {
            bilinear_sample_unchecked(img, x * sx, y * sy, dst + x * c);
        }
    }
    return out;
}

}  // namespace zoom3d
