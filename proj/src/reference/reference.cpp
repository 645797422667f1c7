#include "reference.hpp"

#include <algorithm>
#include <cmath>

namespace zoom3d::reference {

float sample(const Image& img, double x, double y, int channel) {
    const double cx = std::min(std::max(x, 0.0), img.width() - 1.0);
    const double cy = std::min(std::max(y, 0.0), img.height() - 1.0);
    const int x0 = static_cast<int>(std::floor(cx));
    const int y0 = static_cast<int>(std::floor(cy));
    const int x1 = x0 + 1 < img.width() ? x0 + 1 : x0;
    const int y1 = y0 + 1 < img.height() ? y0 + 1 : y0;
    const double ax = cx - x0;
    const double ay = cy - y0;
    const double v00 = img.at(x0, y0, channel);
    const double v10 = img.at(x1, y0, channel);
    const double v01 = img.at(x0, y1, channel);
    const double v11 = img.at(x1, y1, channel);
    const double top = v00 + ax * (v10 - v00);
    const double bottom = v01 + ax * (v11 - v01);
    return static_cast<float>(top + ay * (bottom - top));
}

Image upscale(const Image& img, double ratio) {
    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    Image out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double sx = (x - cx) / ratio + cx;
            const double sy = (y - cy) / ratio + cy;
            for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = sample(img, sx, sy, c);
        }
    }
    return out;
}

std::vector<int> oracle_selection(const DisparityMap& dn, const ZoomParams& params) {
    const int w = dn.width();
    const int h = dn.height();
    const int n = params.channels();
    const double zf = params.zoom_factor();
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    std::vector<int> selected(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int best = -1;
            double best_err = 0.0;
            for (int k = 0; k < n; ++k) {
                const double r = k == n - 1 ? zf : 1.0 + (static_cast<double>(k) / (n - 1)) * (zf - 1.0);
                const double d = sample(dn.as_image(), (x - cx) / r + cx, (y - cy) / r + cy, 0);
                const double err = std::abs(r - (1.0 + (zf - 1.0) * d));
                if (best < 0 || err <= best_err) {
                    best = k;
                    best_err = err;
                }
            }
            selected[static_cast<std::size_t>(y) * w + x] = best;
        }
    }
    return selected;
}

Image render_oracle(const Image& img, const DisparityMap& dn, const ZoomParams& params) {
    const std::vector<int> selected = oracle_selection(dn, params);
    const int n = params.channels();
    const double zf = params.zoom_factor();
    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    Image out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const int k = selected[static_cast<std::size_t>(y) * img.width() + x];
            const double r = k == n - 1 ? zf : 1.0 + (static_cast<double>(k) / (n - 1)) * (zf - 1.0);
            for (int c = 0; c < img.channels(); ++c) {
                out.at(x, y, c) = sample(img, (x - cx) / r + cx, (y - cy) / r + cy, c);
            }
        }
    }
    return out;
}

std::pair<Image, Mask> forward_splat(const Image& img, const DisparityMap& dn, const ZoomParams& params) {
    const int w = img.width();
    const int h = img.height();
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    const double zf = params.zoom_factor();
    Image out(w, h, img.channels(), 0.0f);
    Mask mask(w, h, 0);
    std::vector<float> depth(static_cast<std::size_t>(w) * h, -1.0f);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const float d = dn.at(x, y);
            const double s = 1.0 + (zf - 1.0) * d;
            const double tx = std::floor((x - cx) * s + cx + 0.5);
            const double ty = std::floor((y - cy) * s + cy + 0.5);
            if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
            const int ix = static_cast<int>(tx);
            const int iy = static_cast<int>(ty);
            float& z = depth[static_cast<std::size_t>(iy) * w + ix];
            if (d > z) {
                z = d;
                for (int c = 0; c < img.channels(); ++c) out.at(ix, iy, c) = img.at(x, y, c);
                mask.at(ix, iy) = 1;
            }
        }
    }
    return {std::move(out), std::move(mask)};
}

Image backward_warp(const Image& img, const FlowField& flow) {
    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    Image out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double px = (x - cx) - flow.x(x, y);
            const double py = (y - cy) - flow.y(x, y);
            for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = sample(img, px + cx, py + cy, c);
        }
    }
    return out;
}

double l1(const Image& a, const Image& b) {
    double acc = 0.0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            for (int c = 0; c < a.channels(); ++c) acc += std::abs(static_cast<double>(a.at(x, y, c)) - b.at(x, y, c));
        }
    }
    return acc / (static_cast<double>(a.width()) * a.height() * a.channels());
}

double ssim(const Image& a, const Image& b, int window) {
    const long double c1 = 0.0001L;
    const long double c2 = 0.0009L;
    const int r = window / 2;
    long double total = 0.0L;
    for (int c = 0; c < a.channels(); ++c) {
        long double channel = 0.0L;
        long count = 0;
        for (int y = r; y + r < a.height(); ++y) {
            for (int x = r; x + r < a.width(); ++x) {
                long double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
                for (int v = y - r; v <= y + r; ++v) {
                    for (int u = x - r; u <= x + r; ++u) {
                        const long double pa = a.at(u, v, c);
                        const long double pb = b.at(u, v, c);
                        sa += pa;
                        sb += pb;
                        saa += pa * pa;
                        sbb += pb * pb;
                        sab += pa * pb;
                    }
                }
                const long double n = static_cast<long double>(window) * window;
                const long double ma = sa / n;
                const long double mb = sb / n;
                const long double va = saa / n - ma * ma;
                const long double vb = sbb / n - mb * mb;
                const long double cov = sab / n - ma * mb;
                channel += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
                ++count;
            }
        }
        total += channel / count;
    }
    return static_cast<double>(total / a.channels());
}

}  // namespace zoom3d::reference
