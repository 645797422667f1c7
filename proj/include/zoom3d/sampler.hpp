#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace zoom3d {

/// Draws zoom factors concentrated near the maximum.
///
/// g ~ Normal(mu = max_zoom_factor, sigma); the right tail is reflected about
/// mu (z = mu - |g - mu|) and the result is clamped below at 1, so every
/// sample lies in [1, max_zoom_factor].
class ZoomSampler {
public:
    explicit ZoomSampler(double max_zoom_factor = 3.0, double sigma = 1.0, std::uint64_t seed = 0);

    double max_zoom_factor() const noexcept { return max_zoom_; }
    double sigma() const noexcept { return sigma_; }

    double operator()();

private:
    double max_zoom_;
    double sigma_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

inline double sample_zoom(ZoomSampler& sampler) { return sampler(); }

/// Analytic CDF of the sampler's output:
///   0                                for t < 1
///   2 * (1 - Phi((mu - t) / sigma))  for 1 <= t < mu  (atom at 1 included)
///   1                                for t >= mu
double folded_clamped_cdf(double t, double max_zoom_factor, double sigma);

/// Kolmogorov-Smirnov statistic of `samples` (sorted in place) against
/// folded_clamped_cdf, accounting for the atom at 1.
double ks_statistic(std::span<double> samples, double max_zoom_factor, double sigma);

}  // namespace zoom3d
