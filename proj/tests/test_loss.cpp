#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "reference.hpp"
#include "scenes.hpp"
#include "zoom3d/error.hpp"
#include "zoom3d/loss.hpp"

using namespace zoom3d;

namespace {

CriticScores constant_scores(float v, std::size_t n = 16) { return CriticScores{std::vector<float>(n, v)}; }

Image checkerboard(int w, int h, bool invert) {
    Image img(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.at(x, y) = ((x + y) % 2 == 0) != invert ? 1.0f : 0.0f;
    }
    return img;
}

}  // namespace

TEST(L1Loss, Examples) {
    std::mt19937_64 rng(1);
    const Image a = fixtures::random_image(12, 9, 3, rng);
    EXPECT_EQ(l1_loss(a, a), 0.0);

    const Image lo(6, 5, 3, 0.3f);
    const Image hi(6, 5, 3, 0.4f);
    EXPECT_NEAR(l1_loss(lo, hi), 0.1, 1e-7);
    EXPECT_EQ(l1_loss(Image(6, 5, 1, 0.0f), Image(6, 5, 1, 1.0f)), 1.0);
}

TEST(L1Loss, RejectsMismatch) { EXPECT_THROW(l1_loss(Image(4, 4, 1), Image(4, 4, 3)), InvalidArgument); }

TEST(Ssim, IdenticalImagesGiveExactlyOne) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const Image a = fixtures::random_image(20 + trial, 15, 3, rng);
        EXPECT_EQ(ssim(a, a), 1.0);
    }
    const Image n = fixtures::natural_image(64, 32);
    EXPECT_EQ(ssim(n, n, LossConfig{.ssim_window = 7}), 1.0);
}

TEST(Ssim, ZeroVarianceClosedForm) {
    constexpr double c1 = 0.0001, c2 = 0.0009;
    for (auto [ma, mb] : {std::pair{0.2f, 0.7f}, std::pair{0.9f, 0.1f}, std::pair{0.5f, 0.55f}}) {
        const double expected = ((2.0 * ma * mb + c1) * c2) / ((double(ma) * ma + double(mb) * mb + c1) * c2);
        EXPECT_NEAR(ssim(Image(9, 7, 1, ma), Image(9, 7, 1, mb)), expected, 1e-12);
    }
}

TEST(Ssim, MatchesIndependentScalarReference) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Image a = fixtures::random_image(32, 32, trial % 2 ? 3 : 1, rng);
        const Image b = fixtures::random_image(32, 32, a.channels(), rng);
        EXPECT_NEAR(ssim(a, b), reference::ssim(a, b, 3), 1e-6);
        EXPECT_NEAR(ssim(a, b, LossConfig{.ssim_window = 5}), reference::ssim(a, b, 5), 1e-6);
    }
}

TEST(Ssim, RejectsImageSmallerThanWindow) {
    EXPECT_THROW(ssim(Image(4, 4, 1), Image(4, 4, 1), LossConfig{.ssim_window = 5}), InvalidArgument);
    EXPECT_THROW(ssim(Image(8, 8, 1), Image(8, 8, 1), LossConfig{.ssim_window = 4}), InvalidArgument);
}

TEST(AppearanceLoss, IdenticalIsZeroAndAlphaOneIsL1) {
    std::mt19937_64 rng(4);
    const Image a = fixtures::random_image(16, 16, 3, rng);
    const Image b = fixtures::random_image(16, 16, 3, rng);
    EXPECT_EQ(appearance_loss(a, a), 0.0);
    EXPECT_EQ(appearance_loss(a, b, LossConfig{.alpha = 1.0}), l1_loss(a, b));
    EXPECT_EQ(appearance_loss(a, a, LossConfig{.alpha = 0.0}), 0.0);
}

TEST(AppearanceLoss, AntiCorrelatedPairApproachesOne) {
    const Image a = checkerboard(24, 24, false);
    const Image b = checkerboard(24, 24, true);
    const double expected = (1.0 - reference::ssim(a, b, 3)) / 2.0;
    const double got = appearance_loss(a, b, LossConfig{.alpha = 0.0});
    EXPECT_NEAR(got, expected, 1e-9);
    EXPECT_GT(got, 0.95);
    EXPECT_LE(got, 1.0);
}

TEST(PerceptualLoss, IdenticalSymmetricAndConstantOffset) {
    const BlurGradientExtractor fx;
    std::mt19937_64 rng(5);
    const Image a = fixtures::random_image(24, 18, 3, rng);
    const Image b = fixtures::random_image(24, 18, 3, rng);
    EXPECT_EQ(perceptual_loss(a, a, fx), 0.0);
    EXPECT_EQ(perceptual_loss(a, b, fx), perceptual_loss(b, a, fx));

    // Blur keeps a constant; the gradient layers of constants are identical.
    const double offset = 0.25;
    EXPECT_NEAR(perceptual_loss(Image(20, 12, 3, 0.3f), Image(20, 12, 3, 0.55f), fx), offset + 0.0 + 0.0, 1e-6);
}

TEST(PerceptualLoss, LayerShapesDependOnlyOnInput) {
    const BlurGradientExtractor fx;
    const Image img(11, 7, 3, 0.5f);
    EXPECT_EQ(fx.layer(img, 0).channels(), 3);
    EXPECT_EQ(fx.layer(img, 1).channels(), 6);
    EXPECT_EQ(fx.layer(img, 2).width(), 11);
    EXPECT_THROW(fx.layer(img, 3), InvalidArgument);
}

TEST(WeightedLosses, ReconstructionAndFullExamples) {
    EXPECT_EQ(reconstruction_loss(1, 0), 0.8);
    EXPECT_EQ(reconstruction_loss(0, 1), 0.2);
    EXPECT_NEAR(reconstruction_loss(1, 1), 1.0, 1e-12);
    EXPECT_NEAR(full_loss(1, 1, 1), 1.02, 1e-12);
    EXPECT_EQ(full_loss(0, 0, 1), 0.02);
    EXPECT_EQ(full_loss(1, 0, 0), 0.8);
}

TEST(AdversarialLosses, Examples) {
    EXPECT_EQ(discriminator_loss(constant_scores(0.0f), constant_scores(1.0f)), 0.0);
    EXPECT_EQ(discriminator_loss(constant_scores(1.0f), constant_scores(0.0f)), 2.0);
    EXPECT_EQ(discriminator_loss(constant_scores(0.5f), constant_scores(0.5f)), 0.5);
    EXPECT_EQ(generator_adv_loss(constant_scores(1.0f)), 0.0);
    EXPECT_EQ(generator_adv_loss(constant_scores(0.0f)), 1.0);
    EXPECT_EQ(generator_adv_loss(constant_scores(0.5f)), 0.25);
    EXPECT_THROW(generator_adv_loss(CriticScores{}), InvalidArgument);
}

TEST(AdversarialLosses, MirrorIdentity) {
    // mse(x, 0) == mse(1 - x, 1) pointwise, so swapping roles and targets is neutral.
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    for (int trial = 0; trial < 50; ++trial) {
        CriticScores fake, real, fake_m, real_m;
        for (int k = 0; k < 64; ++k) {
            fake.values.push_back(u(rng));
            real.values.push_back(u(rng));
            fake_m.values.push_back(1.0f - real.values.back());
            real_m.values.push_back(1.0f - fake.values.back());
        }
        EXPECT_NEAR(discriminator_loss(fake, real), discriminator_loss(fake_m, real_m), 1e-7);
        EXPECT_GE(discriminator_loss(fake, real), 0.0);
    }
}

TEST(LossConfigTest, Validation) {
    EXPECT_NO_THROW(LossConfig{}.validate());
    EXPECT_THROW((LossConfig{.alpha = 1.5}).validate(), InvalidArgument);
    EXPECT_THROW((LossConfig{.w_p = -0.1}).validate(), InvalidArgument);
    EXPECT_THROW((LossConfig{.ssim_window = 2}).validate(), InvalidArgument);
}

TEST(GaussianBlur, MatchesDirectClampedConvolution) {
    std::mt19937_64 rng(8);
    const Image img = fixtures::random_image(19, 13, 3, rng);
    for (double sigma : {0.7, 1.0, 2.0}) {
        const int radius = static_cast<int>(std::ceil(3.0 * sigma));
        double norm = 0.0;
        for (int i = -radius; i <= radius; ++i) norm += std::exp(-0.5 * i * i / (sigma * sigma));
        const Image out = gaussian_blur(img, sigma);
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                for (int k = 0; k < 3; ++k) {
                    double acc = 0.0;
                    for (int dy = -radius; dy <= radius; ++dy) {
                        for (int dx = -radius; dx <= radius; ++dx) {
                            const double wgt = std::exp(-0.5 * (dx * dx + dy * dy) / (sigma * sigma)) / (norm * norm);
                            acc += wgt * img.at(std::clamp(x + dx, 0, img.width() - 1),
                                                std::clamp(y + dy, 0, img.height() - 1), k);
                        }
                    }
                    ASSERT_NEAR(out.at(x, y, k), acc, 2e-6) << sigma << " " << x << "," << y;
                }
            }
        }
    }
    EXPECT_THROW(gaussian_blur(img, 0.0), InvalidArgument);
}

TEST(PerceptualLoss, FusedDistanceMatchesLayerByLayer) {
    // The generic path materializes every layer and compares them one by one.
    struct LayerByLayer final : FeatureExtractor {
        BlurGradientExtractor inner;
        std::string name() const override { return "layers"; }
        int layer_count() const override { return inner.layer_count(); }
        Image layer(const Image& img, int index) const override { return inner.layer(img, index); }
    };
    const BlurGradientExtractor fused;
    const LayerByLayer generic;
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        const Image a = fixtures::random_image(37, 21, trial % 2 ? 3 : 1, rng);
        const Image b = fixtures::random_image(37, 21, a.channels(), rng);
        EXPECT_NEAR(perceptual_loss(a, b, fused), perceptual_loss(a, b, generic), 1e-9);
        const auto layers = fused.layers(a);
        ASSERT_EQ(layers.size(), 3u);
        for (int l = 0; l < 3; ++l) EXPECT_EQ(layers[l], fused.layer(a, l));
    }
}
