#pragma once

// Straight-line serial implementations of the hot kernels. They share no
// code with src/kernels (own sampling, own loops) and exist to check and
// benchmark the OpenMP versions.

#include <utility>

#include "zoom3d/geometry.hpp"
#include "zoom3d/image.hpp"
#include "zoom3d/render.hpp"

namespace zoom3d::reference {

float sample(const Image& img, double x, double y, int channel);

Image upscale(const Image& img, double ratio);

/// blend(build_pyramid(img), oracle_volume(dn)) evaluated pixel by pixel
/// with an explicit search over all levels.
Image render_oracle(const Image& img, const DisparityMap& dn, const ZoomParams& params);

/// Selected level per pixel, row-major.
std::vector<int> oracle_selection(const DisparityMap& dn, const ZoomParams& params);

/// Sequential z-test splat in row-major scan order; replaces only on a
/// strictly larger Dn.
std::pair<Image, Mask> forward_splat(const Image& img, const DisparityMap& dn, const ZoomParams& params);

Image backward_warp(const Image& img, const FlowField& flow);

double l1(const Image& a, const Image& b);

/// Valid-window box SSIM from raw moments: sigma_ab = E[ab] - E[a]E[b].
double ssim(const Image& a, const Image& b, int window);

}  // namespace zoom3d::reference
