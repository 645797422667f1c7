#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zoom3d/image.hpp"

namespace zoom3d {

struct LossConfig {
    double alpha = 0.85;  // L1 share of the appearance loss
    double w_ap = 0.8;
    double w_p = 0.2;
    double w_d = 0.02;
    int ssim_window = 3;

    /// Throws InvalidArgument on out-of-range fields.
    void validate() const;
};

/// A named stack of deterministic feature transforms. Output dimensions of
/// every layer depend only on the input dimensions.
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;

    virtual std::string name() const = 0;
    virtual int layer_count() const = 0;
    virtual Image layer(const Image& img, int index) const = 0;

    /// Every layer in order. Override to share work between layers.
    virtual std::vector<Image> layers(const Image& img) const;

    /// Sum over layers of the mean absolute difference between the layers
    /// of `a` and `b`. Override to avoid materializing layers.
    virtual double distance(const Image& a, const Image& b) const;
};

/// Weight-free perceptual stand-in with three layers:
///   0: Gaussian blur (sigma 1) of the input,
///   1: forward differences (d/dx, d/dy) of the sigma-1 blur,
///   2: forward differences of a sigma-2 blur.
/// Gradient layers store 0.5 + 0.5 * difference so values stay in [0,1].
/// This is not a trained network; it only penalizes blur and structural
/// deformation in a deterministic way.
class BlurGradientExtractor final : public FeatureExtractor {
public:
    std::string name() const override { return "blur-gradient-3"; }
    int layer_count() const override { return 3; }
    Image layer(const Image& img, int index) const override;
    std::vector<Image> layers(const Image& img) const override;
    double distance(const Image& a, const Image& b) const override;
};

/// Separable Gaussian blur with a normalized kernel of radius ceil(3 sigma),
/// clamp-to-edge borders.
Image gaussian_blur(const Image& img, double sigma);

/// Patch scores of a critic, each in [0,1].
struct CriticScores {
    std::vector<float> values;
};

/// Mean absolute difference over all pixels and channels.
double l1_loss(const Image& a, const Image& b);

/// Mean SSIM over every position where the box window fits fully, averaged
/// over channels. C1 = 0.01^2, C2 = 0.03^2.
double ssim(const Image& a, const Image& b, const LossConfig& cfg = {});

/// alpha * L1 + (1 - alpha) * (1 - SSIM) / 2
double appearance_loss(const Image& a, const Image& b, const LossConfig& cfg = {});

/// Sum over layers of the mean absolute feature difference.
double perceptual_loss(const Image& a, const Image& b, const FeatureExtractor& fx);

/// w_ap * l_ap + w_p * l_p
double reconstruction_loss(double l_ap, double l_p, const LossConfig& cfg = {});

/// w_ap * l_ap + w_p * l_p + w_d * l_d
double full_loss(double l_ap, double l_p, double l_d, const LossConfig& cfg = {});

/// mse(fake, 0) + mse(real, 1)
double discriminator_loss(const CriticScores& fake, const CriticScores& real);

/// mse(fake, 1)
double generator_adv_loss(const CriticScores& fake);

}  // namespace zoom3d
