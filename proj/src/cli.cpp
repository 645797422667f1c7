#include "zoom3d/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

#include "zoom3d/error.hpp"
#include "zoom3d/sampler.hpp"

namespace zoom3d::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("config key '" + key + "': not a number: " + value);
    }
    return v;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& value) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("config key '" + key + "': not an integer: " + value);
    }
    return v;
}

bool parse_bool(const std::string& key, std::string value) {
    std::transform(value.begin(), value.end(), value.begin(), [](unsigned char c) { return std::tolower(c); });
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw ConfigError("config key '" + key + "': not a boolean: " + value);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config: return kConfigError;
        case ErrorKind::Io:
        case ErrorKind::Format: return kIoError;
        case ErrorKind::InvalidArgument:
        case ErrorKind::DegenerateInput: return kDegenerateInput;
    }
    return kDegenerateInput;
}

// Flag values as typed on the command line; only flags that were actually
// given override the config file.
struct Flags {
    std::string config;
    std::string image;
    std::string disparity;
    double zoom = 0.0;
    int n_channels = kDefaultChannels;
    double max_zoom = kDefaultMaxZoom;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    double alpha = 0.85;
    int ssim_window = 3;
    std::string out_dir;
    bool baseline = false;
    bool dump_volume = false;
    int threads = 0;
    std::size_t count = 1000;
    int bins = 20;
    std::vector<std::string> eval_files;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << text;
    if (!file) throw IoError("cannot write " + path.string());
}

int run_sample_zoom(const RunConfig& cfg, std::size_t count, int bins, bool to_file, std::ostream& out) {
    if (bins < 1) throw ConfigError("bins must be >= 1");
    ZoomSampler sampler(cfg.max_zoom, cfg.sigma, cfg.seed);
    std::vector<double> samples(count);
    for (double& s : samples) s = sampler();

    std::string listing;
    for (double s : samples) listing += format_value(s) + "\n";
    if (to_file) {
        std::filesystem::create_directories(cfg.out_dir);
        write_text(cfg.out_dir / "samples.txt", listing);
    } else {
        out << listing;
    }

    const double lo = 1.0;
    const double hi = cfg.max_zoom;
    std::vector<std::size_t> hist(bins, 0);
    for (double s : samples) {
        int b = hi > lo ? static_cast<int>((s - lo) / (hi - lo) * bins) : 0;
        hist[std::clamp(b, 0, bins - 1)]++;
    }
    for (int b = 0; b < bins; ++b) {
        const double a = lo + (hi - lo) * b / bins;
        const double z = lo + (hi - lo) * (b + 1) / bins;
        out << "# bin " << format_value(a) << " " << format_value(z) << " " << hist[b] << "\n";
    }
    return kOk;
}

}  // namespace

void apply_config_file(const std::filesystem::path& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');

        if (key == "image") cfg.image = value;
        else if (key == "disparity") cfg.disparity = value;
        else if (key == "zoom") cfg.zoom = parse_double(key, value);
        else if (key == "n-channels") cfg.n_channels = parse_int<int>(key, value);
        else if (key == "max-zoom") cfg.max_zoom = parse_double(key, value);
        else if (key == "sigma") cfg.sigma = parse_double(key, value);
        else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(key, value);
        else if (key == "alpha") cfg.loss.alpha = parse_double(key, value);
        else if (key == "ssim-window") cfg.loss.ssim_window = parse_int<int>(key, value);
        else if (key == "out-dir") cfg.out_dir = value;
        else if (key == "baseline") cfg.baseline = parse_bool(key, value);
        else if (key == "dump-volume") cfg.dump_volume = parse_bool(key, value);
        else if (key == "threads") cfg.threads = parse_int<int>(key, value);
        else throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Disparity-guided 3D-zoom rendering and re-projection checks", "zoom3d"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "key=value file; flags override it");
    auto* o_image = app.add_option("--image", f.image, "input image (PNG or PGM)");
    auto* o_disp = app.add_option("--disparity", f.disparity, "16-bit KITTI disparity PNG");
    auto* o_zoom = app.add_option("--zoom", f.zoom, "zoom factor; sampled from --seed when absent");
    auto* o_chan = app.add_option("--n-channels", f.n_channels, "selection volume channels (default 32)");
    auto* o_max = app.add_option("--max-zoom", f.max_zoom, "maximum zoom factor (default 3)");
    auto* o_sigma = app.add_option("--sigma", f.sigma, "zoom sampler sigma (default 1)");
    auto* o_seed = app.add_option("--seed", f.seed, "random seed (default 0)");
    auto* o_alpha = app.add_option("--alpha", f.alpha, "L1 weight of the appearance loss (default 0.85)");
    auto* o_win = app.add_option("--ssim-window", f.ssim_window, "SSIM box window size (default 3)");
    auto* o_out = app.add_option("--out-dir", f.out_dir, "output directory (default .)");
    auto* o_base = app.add_flag("--baseline", f.baseline, "also write the forward-splat baseline");
    auto* o_dump = app.add_flag("--dump-volume", f.dump_volume, "dump the selection volume");
    auto* o_threads = app.add_option("--threads", f.threads, "OpenMP threads (0 = default)");

    auto* render = app.add_subcommand("render", "synthesize the zoomed-in image");
    auto* cycle = app.add_subcommand("cycle", "render, back re-project and report losses");
    auto* eval = app.add_subcommand("eval", "appearance metrics between two images");
    eval->add_option("files", f.eval_files, "two image files")->expected(2)->required();
    auto* flows = app.add_subcommand("flows", "dump f_in, f_out and f_win");
    auto* sample = app.add_subcommand("sample-zoom", "draw zoom factors and print a histogram");
    sample->add_option("--count", f.count, "number of samples (default 1000)");
    sample->add_option("--bins", f.bins, "histogram bins (default 20)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: config: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        RunConfig cfg;
        if (!f.config.empty()) apply_config_file(f.config, cfg);
        if (o_image->count()) cfg.image = f.image;
        if (o_disp->count()) cfg.disparity = f.disparity;
        if (o_zoom->count()) cfg.zoom = f.zoom;
        if (o_chan->count()) cfg.n_channels = f.n_channels;
        if (o_max->count()) cfg.max_zoom = f.max_zoom;
        if (o_sigma->count()) cfg.sigma = f.sigma;
        if (o_seed->count()) cfg.seed = f.seed;
        if (o_alpha->count()) cfg.loss.alpha = f.alpha;
        if (o_win->count()) cfg.loss.ssim_window = f.ssim_window;
        if (o_out->count()) cfg.out_dir = f.out_dir;
        if (o_base->count()) cfg.baseline = f.baseline;
        if (o_dump->count()) cfg.dump_volume = f.dump_volume;
        if (o_threads->count()) cfg.threads = f.threads;
        cfg.validate();
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

        if (render->parsed()) {
            for (const auto& p : cmd_render(cfg)) out << "wrote " << p.string() << "\n";
        } else if (cycle->parsed()) {
            LossReport report;
            cmd_cycle(cfg, &report);
            out << report.to_text();
        } else if (eval->parsed()) {
            const LossReport report = cmd_eval(f.eval_files.at(0), f.eval_files.at(1), cfg);
            out << report.to_text();
            if (o_out->count() || !f.config.empty()) {
                std::filesystem::create_directories(cfg.out_dir);
                write_text(cfg.out_dir / "report.json", report.to_json());
            }
        } else if (flows->parsed()) {
            for (const auto& p : cmd_flows(cfg)) out << "wrote " << p.string() << "\n";
        } else if (sample->parsed()) {
            return run_sample_zoom(cfg, f.count, f.bins, o_out->count() > 0, out);
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: io: " << e.what() << "\n";
        return kIoError;
    }
}

}  // namespace zoom3d::cli
