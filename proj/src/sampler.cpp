#include "zoom3d/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "zoom3d/error.hpp"

namespace zoom3d {

ZoomSampler::ZoomSampler(double max_zoom_factor, double sigma, std::uint64_t seed)
    : max_zoom_(max_zoom_factor), sigma_(sigma), rng_(seed), normal_(0.0, 1.0) {
    if (!std::isfinite(max_zoom_factor) || max_zoom_factor < 1.0) {
        throw InvalidArgument("sampler: max zoom factor must be >= 1");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) throw InvalidArgument("sampler: sigma must be >= 0");
}

double ZoomSampler::operator()() {
    // Standard normal scaled by sigma; sigma == 0 degenerates to mu.
    const double g = max_zoom_ + sigma_ * normal_(rng_);
    const double folded = max_zoom_ - std::abs(g - max_zoom_);
    return std::max(folded, 1.0);
}

double folded_clamped_cdf(double t, double max_zoom_factor, double sigma) {
    if (t < 1.0) return 0.0;
    if (t >= max_zoom_factor) return 1.0;
    if (sigma <= 0.0) return 0.0;
    // P(mu - |g - mu| <= t) = P(|g - mu| >= mu - t) = 2 * (1 - Phi((mu - t) / sigma))
    const double z = (max_zoom_factor - t) / sigma;
    return std::erfc(z / std::sqrt(2.0));
}

double ks_statistic(std::span<double> samples, double max_zoom_factor, double sigma) {
    if (samples.empty()) throw InvalidArgument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < samples.size()) {
        const double t = samples[i];
        std::size_t j = i;
        while (j < samples.size() && samples[j] == t) ++j;
        // Compare both one-sided limits at t; ties are handled as a block.
        const double below = static_cast<double>(i) / n;
        const double at = static_cast<double>(j) / n;
        const double cdf_at = folded_clamped_cdf(t, max_zoom_factor, sigma);
        const double cdf_below = t <= 1.0 ? 0.0 : cdf_at;
        d = std::max({d, std::abs(at - cdf_at), std::abs(below - cdf_below)});
        i = j;
    }
    return d;
}

}  // namespace zoom3d
