#pragma once

#include <filesystem>

#include "zoom3d/geometry.hpp"
#include "zoom3d/image.hpp"
#include "zoom3d/render.hpp"

namespace zoom3d::io {

/// Reads an 8- or 16-bit PNG (gray, gray+alpha, RGB, RGBA or palette).
/// Alpha is dropped; intensities are mapped linearly to [0,1].
Image read_png(const std::filesystem::path& path);

/// Writes 8-bit (round half away from zero) or 16-bit PNG.
void write_png(const std::filesystem::path& path, const Image& img, int bit_depth = 8);

void write_mask_png(const std::filesystem::path& path, const Mask& mask);

/// Binary (P5) or ASCII (P2) PGM with maxval up to 65535.
Image read_pgm(const std::filesystem::path& path);

/// Dispatches on the file signature (PNG or PGM).
Image read_image(const std::filesystem::path& path);

/// KITTI convention: 16-bit single-channel PNG, disparity = raw / 256,
/// raw 0 (missing) becomes disparity 0. Returns a raw (non-normalized) map.
DisparityMap load_kitti_disparity(const std::filesystem::path& path);

/// Inverse of load_kitti_disparity: raw = round(d * 256) clamped to 16 bits.
void write_kitti_disparity(const std::filesystem::path& path, const DisparityMap& d);

/// Little-endian dump: "Z3FL", uint32 W, uint32 H, then the x plane and the
/// y plane as float32, row-major.
void write_flow(const std::filesystem::path& path, const FlowField& flow);
FlowField read_flow(const std::filesystem::path& path);

/// Little-endian dump: "Z3SV", uint32 W, uint32 H, uint32 N, then N planes
/// of float32, row-major.
void write_volume(const std::filesystem::path& path, const ChannelVolume& volume);
ChannelVolume read_volume(const std::filesystem::path& path);

/// 8-bit PNG per channel: <stem>_NN.png in `dir`.
void write_volume_pngs(const std::filesystem::path& dir, const std::string& stem,
                       const ChannelVolume& volume);

}  // namespace zoom3d::io
