#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zoom3d/geometry.hpp"
#include "zoom3d/image.hpp"
#include "zoom3d/loss.hpp"
#include "zoom3d/render.hpp"

namespace zoom3d {

struct RunConfig {
    std::filesystem::path image;
    std::filesystem::path disparity;
    std::optional<double> zoom;  // drawn from the sampler when absent
    int n_channels = kDefaultChannels;
    double max_zoom = kDefaultMaxZoom;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    LossConfig loss;
    std::filesystem::path out_dir = ".";
    bool baseline = false;
    bool dump_volume = false;
    int threads = 0;  // 0 keeps the OpenMP default

    /// Zoom factor for this run: the explicit one, or the first draw of a
    /// ZoomSampler seeded with `seed`.
    double resolve_zoom() const;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Ordered key/value report. Keys keep insertion order for the text form.
class LossReport {
public:
    void set(const std::string& key, double value);
    double get(const std::string& key) const;
    bool has(const std::string& key) const;

    const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }

    /// One "key=value" line per entry, values printed with round-trip precision.
    std::string to_text() const;
    std::string to_json() const;

private:
    std::vector<std::pair<std::string, double>> entries_;
};

struct RenderResult {
    Image zoom_in;
    ChannelMap channels;
    std::optional<Image> splat;
    std::optional<Mask> splat_mask;
};

struct CycleResult {
    Image zoom_in;
    Image zoom_out;      // composited back re-projection
    Mask mask;
    FlowField weighted_flow;
    LossReport report;   // l1, ssim, l_ap, l_p, l_rec, valid_fraction
};

/// In-memory stages. `dn` must be normalized and match the image resolution.
RenderResult render_stage(const Image& img, const DisparityMap& dn, const ZoomParams& params,
                          bool baseline);
CycleResult cycle_stage(const Image& img, const DisparityMap& dn, const ZoomParams& params,
                        const LossConfig& loss);
LossReport eval_stage(const Image& a, const Image& b, const LossConfig& loss);

/// Loads the KITTI disparity, resizes it to the image if needed and
/// normalizes it (DegenerateInput when all zero).
DisparityMap load_normalized_disparity(const std::filesystem::path& path, int width, int height);

/// File-level commands. Each writes its outputs into cfg.out_dir and
/// returns the files it wrote.
std::vector<std::filesystem::path> cmd_render(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_cycle(const RunConfig& cfg, LossReport* report_out = nullptr);
LossReport cmd_eval(const std::filesystem::path& a, const std::filesystem::path& b,
                    const RunConfig& cfg);

/// Writes f_in, f_out and f_win dumps.
std::vector<std::filesystem::path> cmd_flows(const RunConfig& cfg);

}  // namespace zoom3d
