#include "zoom3d/loss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zoom3d/error.hpp"

namespace zoom3d {

namespace {

constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (a.empty() || b.empty() || !a.same_shape(b)) {
        throw InvalidArgument(std::string(what) + ": image shapes differ");
    }
}

// Row sums land in fixed slots and are added in order, so the result does
// not depend on the thread count.
template <class RowFn>
double ordered_sum(int rows, RowFn&& row_fn) {
    std::vector<double> partial(rows, 0.0);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < rows; ++r) partial[r] = row_fn(r);
    return std::accumulate(partial.begin(), partial.end(), 0.0);
}

double mse_against(const CriticScores& scores, double target) {
    if (scores.values.empty()) throw InvalidArgument("critic scores are empty");
    double acc = 0.0;
    for (float v : scores.values) {
        const double d = v - target;
        acc += d * d;
    }
    return acc / static_cast<double>(scores.values.size());
}

Image forward_differences(const Image& img) {
    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    Image out(w, h, 2 * c);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const int yn = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xn = std::min(x + 1, w - 1);
            for (int k = 0; k < c; ++k) {
                const float v = img.at(x, y, k);
                out.at(x, y, 2 * k) = 0.5f + 0.5f * (img.at(xn, y, k) - v);
                out.at(x, y, 2 * k + 1) = 0.5f + 0.5f * (img.at(x, yn, k) - v);
            }
        }
    }
    return out;
}

}  // namespace

void LossConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0,1]");
    if (!(w_ap >= 0.0 && w_p >= 0.0 && w_d >= 0.0) || !std::isfinite(w_ap + w_p + w_d)) {
        throw InvalidArgument("loss weights must be finite and >= 0");
    }
    if (ssim_window < 1 || ssim_window % 2 == 0) throw InvalidArgument("ssim window must be a positive odd size");
}

Image gaussian_blur(const Image& img, double sigma) {
    if (img.empty()) throw InvalidArgument("gaussian_blur: empty image");
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian_blur: sigma must be > 0");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> weights(2 * radius + 1);
    for (int i = -radius; i <= radius; ++i) weights[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    const double norm = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<float> kernel(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) kernel[i] = static_cast<float>(weights[i] / norm);
    const int taps = static_cast<int>(kernel.size());

    const int w = img.width();
    const int h = img.height();
    const int c = img.channels();
    const std::size_t stride = static_cast<std::size_t>(w) * c;
    Image tmp(w, h, c);
    Image out(w, h, c);

    // Horizontal pass over a clamp-padded copy of each row.
#pragma omp parallel
    {
        std::vector<float> padded((static_cast<std::size_t>(w) + 2 * radius) * c);
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            const float* src = img.row(y).data();
            for (int x = -radius; x < w + radius; ++x) {
                const float* px = src + static_cast<std::size_t>(std::clamp(x, 0, w - 1)) * c;
                std::copy(px, px + c, padded.data() + static_cast<std::size_t>(x + radius) * c);
            }
            float* dst = tmp.row(y).data();
            std::fill(dst, dst + stride, 0.0f);
            for (int i = 0; i < taps; ++i) {
                const float kv = kernel[i];
                const float* in = padded.data() + static_cast<std::size_t>(i) * c;
                for (std::size_t j = 0; j < stride; ++j) dst[j] += kv * in[j];
            }
        }
    }
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        float* dst = out.row(y).data();
        std::fill(dst, dst + stride, 0.0f);
        for (int i = 0; i < taps; ++i) {
            const float kv = kernel[i];
            const float* in = tmp.row(std::clamp(y + i - radius, 0, h - 1)).data();
            for (std::size_t j = 0; j < stride; ++j) dst[j] += kv * in[j];
        }
    }
    return out;
}

Image BlurGradientExtractor::layer(const Image& img, int index) const {
    switch (index) {
        case 0: return gaussian_blur(img, 1.0);
        case 1: return forward_differences(gaussian_blur(img, 1.0));
        case 2: return forward_differences(gaussian_blur(img, 2.0));
        default: throw InvalidArgument("BlurGradientExtractor: layer index out of range");
    }
}

std::vector<Image> FeatureExtractor::layers(const Image& img) const {
    std::vector<Image> out;
    for (int l = 0; l < layer_count(); ++l) out.push_back(layer(img, l));
    return out;
}

double FeatureExtractor::distance(const Image& a, const Image& b) const {
    const std::vector<Image> fa = layers(a);
    const std::vector<Image> fb = layers(b);
    double total = 0.0;
    for (std::size_t l = 0; l < fa.size(); ++l) total += l1_loss(fa[l], fb[l]);
    return total;
}

double BlurGradientExtractor::distance(const Image& a, const Image& b) const {
    require_same_shape(a, b, "BlurGradientExtractor::distance");
    const Image fa = gaussian_blur(a, 1.0);
    const Image fb = gaussian_blur(b, 1.0);
    const Image ca = gaussian_blur(a, 2.0);
    const Image cb = gaussian_blur(b, 2.0);
    const int w = a.width();
    const int h = a.height();
    const int c = a.channels();
    const std::size_t stride = static_cast<std::size_t>(w) * c;

    // |grad_a - grad_b| summed over both directions, with the gradient
    // encoding of forward_differences.
    auto gradient_gap = [&](const Image& ia, const Image& ib, int y) {
        const float* ra = ia.row(y).data();
        const float* rb = ib.row(y).data();
        const float* na = ia.row(std::min(y + 1, h - 1)).data();
        const float* nb = ib.row(std::min(y + 1, h - 1)).data();
        double acc = 0.0;
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t right = j + c < stride ? j + c : j;
            const float gxa = 0.5f + 0.5f * (ra[right] - ra[j]);
            const float gxb = 0.5f + 0.5f * (rb[right] - rb[j]);
            const float gya = 0.5f + 0.5f * (na[j] - ra[j]);
            const float gyb = 0.5f + 0.5f * (nb[j] - rb[j]);
            acc += std::abs(static_cast<double>(gxa) - gxb) + std::abs(static_cast<double>(gya) - gyb);
        }
        return acc;
    };

    const double blur_gap = ordered_sum(h, [&](int y) {
        const auto ra = fa.row(y);
        const auto rb = fb.row(y);
        double acc = 0.0;
        for (std::size_t j = 0; j < stride; ++j) acc += std::abs(static_cast<double>(ra[j]) - rb[j]);
        return acc;
    });
    const double fine_gap = ordered_sum(h, [&](int y) { return gradient_gap(fa, fb, y); });
    const double coarse_gap = ordered_sum(h, [&](int y) { return gradient_gap(ca, cb, y); });
    const double n = static_cast<double>(stride) * h;
    return blur_gap / n + fine_gap / (2.0 * n) + coarse_gap / (2.0 * n);
}

std::vector<Image> BlurGradientExtractor::layers(const Image& img) const {
    Image fine = gaussian_blur(img, 1.0);
    Image fine_grad = forward_differences(fine);
    std::vector<Image> out;
    out.push_back(std::move(fine));
    out.push_back(std::move(fine_grad));
    out.push_back(forward_differences(gaussian_blur(img, 2.0)));
    return out;
}

double l1_loss(const Image& a, const Image& b) {
    require_same_shape(a, b, "l1_loss");
    const int h = a.height();
    const double total = ordered_sum(h, [&](int y) {
        const auto ra = a.row(y);
        const auto rb = b.row(y);
        double acc = 0.0;
        for (std::size_t k = 0; k < ra.size(); ++k) acc += std::abs(static_cast<double>(ra[k]) - rb[k]);
        return acc;
    });
    return total / static_cast<double>(a.data().size());
}

double ssim(const Image& a, const Image& b, const LossConfig& cfg) {
    require_same_shape(a, b, "ssim");
    cfg.validate();
    const int win = cfg.ssim_window;
    const int r = win / 2;
    const int w = a.width();
    const int h = a.height();
    const int c = a.channels();
    if (w < win || h < win) throw InvalidArgument("ssim: image smaller than the window");

    const int rows = h - 2 * r;
    const int cols = w - 2 * r;
    const double inv_n = 1.0 / (win * win);
    const std::size_t stride = static_cast<std::size_t>(w) * c;

    // Window sums of a, b, a^2, b^2 and ab: column sums over the window rows,
    // then a horizontal pass. Row partials per channel are reduced in row
    // order so the result does not depend on the thread count.
    std::vector<double> partial(static_cast<std::size_t>(rows) * c, 0.0);
#pragma omp parallel
    {
        std::vector<double> col(5 * stride);
#pragma omp for schedule(static)
        for (int row = 0; row < rows; ++row) {
            std::fill(col.begin(), col.end(), 0.0);
            double* sa = col.data();
            double* sb = sa + stride;
            double* saa = sb + stride;
            double* sbb = saa + stride;
            double* sab = sbb + stride;
            for (int dy = 0; dy < win; ++dy) {
                const float* pa = a.row(row + dy).data();
                const float* pb = b.row(row + dy).data();
                for (std::size_t j = 0; j < stride; ++j) {
                    const double va = pa[j];
                    const double vb = pb[j];
                    sa[j] += va;
                    sb[j] += vb;
                    saa[j] += va * va;
                    sbb[j] += vb * vb;
                    sab[j] += va * vb;
                }
            }
            double* acc = partial.data() + static_cast<std::size_t>(row) * c;
            for (int x = 0; x < cols; ++x) {
                for (int k = 0; k < c; ++k) {
                    double m[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
                    for (int dx = 0; dx < win; ++dx) {
                        const std::size_t j = static_cast<std::size_t>(x + dx) * c + k;
                        m[0] += sa[j];
                        m[1] += sb[j];
                        m[2] += saa[j];
                        m[3] += sbb[j];
                        m[4] += sab[j];
                    }
                    const double mean_a = m[0] * inv_n;
                    const double mean_b = m[1] * inv_n;
                    const double var_a = m[2] * inv_n - mean_a * mean_a;
                    const double var_b = m[3] * inv_n - mean_b * mean_b;
                    const double cov = m[4] * inv_n - mean_a * mean_b;
                    const double num = (2.0 * mean_a * mean_b + kC1) * (2.0 * cov + kC2);
                    const double den = (mean_a * mean_a + mean_b * mean_b + kC1) * (var_a + var_b + kC2);
                    acc[k] += num / den;
                }
            }
        }
    }

    double channel_sum = 0.0;
    for (int k = 0; k < c; ++k) {
        double total = 0.0;
        for (int row = 0; row < rows; ++row) total += partial[static_cast<std::size_t>(row) * c + k];
        channel_sum += total / (static_cast<double>(rows) * cols);
    }
    return channel_sum / c;
}

double appearance_loss(const Image& a, const Image& b, const LossConfig& cfg) {
    cfg.validate();
    const double l1 = l1_loss(a, b);
    const double s = ssim(a, b, cfg);
    return cfg.alpha * l1 + (1.0 - cfg.alpha) * (1.0 - s) / 2.0;
}

double perceptual_loss(const Image& a, const Image& b, const FeatureExtractor& fx) {
    require_same_shape(a, b, "perceptual_loss");
    return fx.distance(a, b);
}

double reconstruction_loss(double l_ap, double l_p, const LossConfig& cfg) {
    return cfg.w_ap * l_ap + cfg.w_p * l_p;
}

double full_loss(double l_ap, double l_p, double l_d, const LossConfig& cfg) {
    return cfg.w_ap * l_ap + cfg.w_p * l_p + cfg.w_d * l_d;
}

double discriminator_loss(const CriticScores& fake, const CriticScores& real) {
    return mse_against(fake, 0.0) + mse_against(real, 1.0);
}

double generator_adv_loss(const CriticScores& fake) { return mse_against(fake, 1.0); }

}  // namespace zoom3d
