#pragma once

#include "zoom3d/geometry.hpp"
#include "zoom3d/image.hpp"

namespace zoom3d {

/// out(p) = bilinear_sample(img, p - flow(p)), center-origin p, clamp-to-edge.
///
/// With flow = f_in * Dn the sample location is p * (1 + (zf-1) Dn(p)), which
/// maps a zoomed-in render back onto the input raster.
Image backward_warp(const Image& img, const FlowField& flow);

/// mask ? z_out : original, per pixel.
Image composite_zoom_out(const Image& z_out, const Image& original, const Mask& mask);

}  // namespace zoom3d
