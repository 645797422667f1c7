#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "reference.hpp"
#include "scenes.hpp"
#include "zoom3d/error.hpp"
#include "zoom3d/reproject.hpp"
#include "zoom3d/render.hpp"

using namespace zoom3d;

namespace {

struct Cycle {
    Image zoom_in;
    Image warped;
    Mask mask;
    Image composite;
};

Cycle run_cycle(const Image& img, const DisparityMap& dn, double zf) {
    const ZoomParams params(zf);
    const Grid grid = identity_grid(img.width(), img.height());
    Cycle c;
    c.zoom_in = render_zoom_in(img, dn, params);
    c.warped = backward_warp(c.zoom_in, weighted_zoom_flow(zoom_in_flow(params, grid), dn));
    c.mask = disocclusion_mask(params, dn, grid);
    c.composite = composite_zoom_out(c.warped, img, c.mask);
    return c;
}

}  // namespace

TEST(BackwardWarp, ZeroFlowIsIdentity) {
    std::mt19937_64 rng(1);
    const Image img = fixtures::random_image(17, 12, 3, rng);
    EXPECT_EQ(backward_warp(img, FlowField(17, 12)), img);
}

TEST(BackwardWarp, ConstantFlowShiftsContentRight) {
    std::mt19937_64 rng(2);
    const Image img = fixtures::random_image(10, 6, 1, rng);
    FlowField flow(10, 6);
    for (int j = 0; j < 6; ++j) {
        for (int i = 0; i < 10; ++i) flow.x(i, j) = 1.0f;
    }
    const Image out = backward_warp(img, flow);
    for (int y = 0; y < 6; ++y) {
        for (int x = 1; x < 10; ++x) EXPECT_EQ(out.at(x, y), img.at(x - 1, y));
        EXPECT_EQ(out.at(0, y), img.at(0, y));  // clamp-to-edge
    }
}

TEST(BackwardWarp, MatchesSerialReference) {
    std::mt19937_64 rng(3);
    const Image img = fixtures::random_image(30, 20, 3, rng);
    FlowField flow(30, 20);
    std::uniform_real_distribution<float> u(-4.0f, 4.0f);
    for (float& v : flow.data()) v = u(rng);
    const Image a = backward_warp(img, flow);
    const Image b = reference::backward_warp(img, flow);
    for (std::size_t k = 0; k < a.data().size(); ++k) ASSERT_NEAR(a.data()[k], b.data()[k], 1e-6);
}

TEST(BackwardWarp, RejectsDimensionMismatch) {
    EXPECT_THROW(backward_warp(Image(8, 8, 1), FlowField(8, 7)), InvalidArgument);
}

TEST(BackwardWarp, ReconstructsInputFromFullDisparityZoom) {
    const Image img = fixtures::natural_image(160, 96);
    const Cycle c = run_cycle(img, DisparityMap::constant(160, 96, 1.0f, true), 2.0);
    double acc = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < 96; ++y) {
        for (int x = 0; x < 160; ++x) {
            if (!c.mask.at(x, y)) continue;
            for (int k = 0; k < 3; ++k) acc += std::abs(c.warped.at(x, y, k) - img.at(x, y, k));
            ++n;
        }
    }
    ASSERT_GT(n, 0u);
    EXPECT_LE(acc / (3.0 * n), 0.02);
}

TEST(CompositeZoomOut, SelectsPerPixel) {
    const Image z(4, 2, 1, 0.9f);
    const Image orig(4, 2, 1, 0.1f);
    EXPECT_EQ(composite_zoom_out(z, orig, Mask(4, 2, 1)), z);
    EXPECT_EQ(composite_zoom_out(z, orig, Mask(4, 2, 0)), orig);

    Mask half(4, 2, 0);
    half.at(0, 0) = half.at(2, 1) = half.at(3, 1) = half.at(1, 0) = 1;
    const Image mixed = composite_zoom_out(z, orig, half);
    for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 4; ++x) EXPECT_EQ(mixed.at(x, y), half.at(x, y) ? 0.9f : 0.1f);
    }
}

TEST(CompositeZoomOut, RejectsDimensionMismatch) {
    EXPECT_THROW(composite_zoom_out(Image(4, 4, 1), Image(4, 4, 3), Mask(4, 4)), InvalidArgument);
    EXPECT_THROW(composite_zoom_out(Image(4, 4, 1), Image(4, 4, 1), Mask(4, 3)), InvalidArgument);
}

TEST(Cycle, UnitZoomIsExactForAnyDisparity) {
    const Image img = fixtures::natural_image(64, 40);
    for (const DisparityMap& dn : {fixtures::ramp_disparity(64, 40), fixtures::block_disparity(64, 40, 5, 5, 30, 20, 0.1f)}) {
        const Cycle c = run_cycle(img, dn, 1.0);
        EXPECT_EQ(c.zoom_in, img);
        EXPECT_EQ(c.composite, img);
    }
}

TEST(Cycle, ConstantDisparityReconstructsWithinInterpolationError) {
    const Image img = fixtures::natural_image(384, 128);
    for (float d : {0.0f, 0.5f, 1.0f}) {
        for (double zf : {1.5, 2.0, 2.5}) {
            const Cycle c = run_cycle(img, DisparityMap::constant(384, 128, d, true), zf);
            const double err = reference::l1(c.composite, img);
            EXPECT_LE(err, 0.02) << "Dn=" << d << " zf=" << zf;
            if (d == 0.0f) EXPECT_EQ(err, 0.0);
        }
    }
}
