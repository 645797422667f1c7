#include "zoom3d/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "zoom3d/error.hpp"
#include "zoom3d/io.hpp"
#include "zoom3d/reproject.hpp"
#include "zoom3d/sampler.hpp"

namespace zoom3d {

namespace {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("cannot write " + path.string());
}

struct Inputs {
    Image image;
    DisparityMap dn;
    ZoomParams params;
};

Inputs load_inputs(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.image.empty()) throw ConfigError("no input image given");
    if (cfg.disparity.empty()) throw ConfigError("no disparity map given");
    Image img = io::read_image(cfg.image);
    validate(img);
    DisparityMap dn = load_normalized_disparity(cfg.disparity, img.width(), img.height());
    return {std::move(img), std::move(dn), ZoomParams(cfg.resolve_zoom(), cfg.n_channels, cfg.max_zoom)};
}

}  // namespace

double RunConfig::resolve_zoom() const {
    if (zoom) return *zoom;
    ZoomSampler sampler(max_zoom, sigma, seed);
    return sampler();
}

void RunConfig::validate() const {
    if (n_channels < 2 || n_channels > 65535) throw ConfigError("n-channels must be in [2, 65535]");
    if (!std::isfinite(max_zoom) || max_zoom < 1.0) throw ConfigError("max-zoom must be >= 1");
    if (zoom && (!std::isfinite(*zoom) || *zoom < 1.0 || *zoom > max_zoom)) {
        throw ConfigError("zoom must lie in [1, max-zoom]");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) throw ConfigError("sigma must be >= 0");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    try {
        loss.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

void LossReport::set(const std::string& key, double value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

double LossReport::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    throw InvalidArgument("report has no key " + key);
}

bool LossReport::has(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return true;
    }
    return false;
}

std::string LossReport::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + format_value(v) + "\n";
    return out;
}

std::string LossReport::to_json() const {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [k, v] : entries_) doc[k] = v;
    return doc.dump(2) + "\n";
}

DisparityMap load_normalized_disparity(const std::filesystem::path& path, int width, int height) {
    const DisparityMap raw = io::load_kitti_disparity(path);
    return normalize_disparity(resize_disparity(raw, width, height));
}

RenderResult render_stage(const Image& img, const DisparityMap& dn, const ZoomParams& params, bool baseline) {
    if (dn.width() != img.width() || dn.height() != img.height()) {
        throw InvalidArgument("disparity and image dimensions differ");
    }
    RenderResult result;
    result.channels = oracle_channels(dn, params);
    result.zoom_in = render_with_channels(img, result.channels, params);
    if (baseline) {
        auto [splat, mask] = forward_splat(img, dn, params);
        result.splat = std::move(splat);
        result.splat_mask = std::move(mask);
    }
    return result;
}

CycleResult cycle_stage(const Image& img, const DisparityMap& dn, const ZoomParams& params, const LossConfig& loss) {
    loss.validate();
    CycleResult result;
    result.zoom_in = render_zoom_in(img, dn, params);

    const Grid grid = identity_grid(img.width(), img.height());
    result.weighted_flow = weighted_zoom_flow(zoom_in_flow(params, grid), dn);
    const Image warped = backward_warp(result.zoom_in, result.weighted_flow);
    result.mask = disocclusion_mask(params, dn, grid);
    result.zoom_out = composite_zoom_out(warped, img, result.mask);

    const double l1 = l1_loss(img, result.zoom_out);
    const double s = ssim(img, result.zoom_out, loss);
    const double l_ap = loss.alpha * l1 + (1.0 - loss.alpha) * (1.0 - s) / 2.0;
    const double l_p = perceptual_loss(img, result.zoom_out, BlurGradientExtractor{});

    result.report.set("l1", l1);
    result.report.set("ssim", s);
    result.report.set("l_ap", l_ap);
    result.report.set("l_p", l_p);
    result.report.set("l_rec", reconstruction_loss(l_ap, l_p, loss));
    result.report.set("valid_fraction", result.mask.valid_fraction());
    return result;
}

LossReport eval_stage(const Image& a, const Image& b, const LossConfig& loss) {
    if (!a.same_shape(b)) throw InvalidArgument("images differ in shape");
    LossReport report;
    report.set("l1", l1_loss(a, b));
    report.set("ssim", ssim(a, b, loss));
    report.set("l_ap", appearance_loss(a, b, loss));
    return report;
}

std::vector<std::filesystem::path> cmd_render(const RunConfig& cfg) {
    const Inputs in = load_inputs(cfg);
    const RenderResult result = render_stage(in.image, in.dn, in.params, cfg.baseline);

    ensure_dir(cfg.out_dir);
    std::vector<std::filesystem::path> written;
    written.push_back(cfg.out_dir / "zoom_in.png");
    io::write_png(written.back(), result.zoom_in);

    if (cfg.dump_volume) {
        const SelectionVolume volume = oracle_volume(in.dn, in.params);
        written.push_back(cfg.out_dir / "volume.bin");
        io::write_volume(written.back(), volume);
        io::write_volume_pngs(cfg.out_dir, "volume", volume);
    }
    if (cfg.baseline) {
        written.push_back(cfg.out_dir / "splat.png");
        io::write_png(written.back(), *result.splat);
        written.push_back(cfg.out_dir / "splat_mask.png");
        io::write_mask_png(written.back(), *result.splat_mask);
    }
    return written;
}

std::vector<std::filesystem::path> cmd_cycle(const RunConfig& cfg, LossReport* report_out) {
    const Inputs in = load_inputs(cfg);
    const CycleResult result = cycle_stage(in.image, in.dn, in.params, cfg.loss);

    ensure_dir(cfg.out_dir);
    std::vector<std::filesystem::path> written{cfg.out_dir / "zoom_in.png", cfg.out_dir / "zoom_out.png",
                                               cfg.out_dir / "report.json"};
    io::write_png(written[0], result.zoom_in);
    io::write_png(written[1], result.zoom_out);
    write_text(written[2], result.report.to_json());
    if (report_out) *report_out = result.report;
    return written;
}

LossReport cmd_eval(const std::filesystem::path& a, const std::filesystem::path& b, const RunConfig& cfg) {
    cfg.validate();
    const Image ia = io::read_image(a);
    const Image ib = io::read_image(b);
    return eval_stage(ia, ib, cfg.loss);
}

std::vector<std::filesystem::path> cmd_flows(const RunConfig& cfg) {
    const Inputs in = load_inputs(cfg);
    const Grid grid = identity_grid(in.image.width(), in.image.height());
    const FlowField f_in = zoom_in_flow(in.params, grid);

    ensure_dir(cfg.out_dir);
    std::vector<std::filesystem::path> written{cfg.out_dir / "f_in.bin", cfg.out_dir / "f_out.bin",
                                               cfg.out_dir / "f_win.bin"};
    io::write_flow(written[0], f_in);
    io::write_flow(written[1], zoom_out_flow(in.params, grid));
    io::write_flow(written[2], weighted_zoom_flow(f_in, in.dn));
    return written;
}

}  // namespace zoom3d
