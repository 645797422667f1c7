#include "scenes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

namespace zoom3d::fixtures {

namespace {

// Integer hash to [0,1); keeps images identical across standard libraries.
double lattice(std::uint32_t x, std::uint32_t y, std::uint32_t seed) {
    std::uint32_t h = x * 374761393u + y * 668265263u + seed * 2246822519u;
    h = (h ^ (h >> 13)) * 1274126177u;
    h ^= h >> 16;
    return (h & 0xFFFFFF) / static_cast<double>(0x1000000);
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise(double x, double y, std::uint32_t seed) {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<std::uint32_t>(static_cast<std::int64_t>(fx) + 100000);
    const auto iy = static_cast<std::uint32_t>(static_cast<std::int64_t>(fy) + 100000);
    const double tx = smoothstep(x - fx);
    const double ty = smoothstep(y - fy);
    const double a = lattice(ix, iy, seed);
    const double b = lattice(ix + 1, iy, seed);
    const double c = lattice(ix, iy + 1, seed);
    const double d = lattice(ix + 1, iy + 1, seed);
    return (a + (b - a) * tx) * (1 - ty) + (c + (d - c) * tx) * ty;
}

}  // namespace

Image natural_image(int width, int height, std::uint32_t seed) {
    Image img(width, height, 3);
    const double periods[] = {96.0, 48.0, 24.0, 12.0, 6.0};
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double base[3] = {0.0, 0.0, 0.0};
            double norm = 0.0;
            for (double p : periods) {
                const double amp = p / periods[0];
                norm += amp;
                for (int c = 0; c < 3; ++c) {
                    base[c] += amp * value_noise(x / p, y / p, seed * 31u + static_cast<std::uint32_t>(p) * 7u + c);
                }
            }
            // Soft disc and a soft vertical bar give some larger structure.
            const double dx = x - 0.3 * width;
            const double dy = y - 0.5 * height;
            const double disc = 1.0 / (1.0 + std::exp((std::sqrt(dx * dx + dy * dy) - 0.18 * height) / 1.5));
            const double bar = 1.0 / (1.0 + std::exp(-(x - 0.7 * width) / 1.5)) *
                               (1.0 / (1.0 + std::exp((x - 0.75 * width) / 1.5)));
            for (int c = 0; c < 3; ++c) {
                double v = 0.15 + 0.7 * base[c] / norm;
                v = v * (1.0 - 0.35 * disc) + 0.3 * disc * (c == 0 ? 1.0 : 0.2);
                v = v * (1.0 - 0.3 * bar) + 0.25 * bar * (c == 2 ? 1.0 : 0.4);
                img.at(x, y, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
    }
    return img;
}

Image affine_image(int width, int height, double a, double b, double c) {
    Image img(width, height, 1);
    const double cx = center_x(width);
    const double cy = center_y(height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) img.at(x, y) = static_cast<float>(a * (x - cx) + b * (y - cy) + c);
    }
    return img;
}

Image random_image(int width, int height, int channels, std::mt19937_64& rng) {
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    Image img(width, height, channels);
    for (float& v : img.data()) v = u(rng);
    return img;
}

DisparityMap ramp_disparity(int width, int height) {
    std::vector<float> v(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / (width - 1);
            const double w = static_cast<double>(y) / (height - 1);
            v[static_cast<std::size_t>(y) * width + x] = static_cast<float>(0.5 * (u + w));
        }
    }
    return DisparityMap::normalized_map(width, height, std::move(v));
}

DisparityMap block_disparity(int width, int height, int x0, int y0, int x1, int y1, float background) {
    std::vector<float> v(static_cast<std::size_t>(width) * height, background);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) v[static_cast<std::size_t>(y) * width + x] = 1.0f;
    }
    return DisparityMap::normalized_map(width, height, std::move(v));
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace zoom3d::fixtures
