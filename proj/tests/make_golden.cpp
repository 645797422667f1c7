// Writes the piecewise-disparity scene and its golden zoom-in render into the
// given directory (default: tests/data of the source tree). The golden image
// comes from the serial reference renderer only.

#include <cstdio>
#include <filesystem>
#include <vector>

#include "reference.hpp"
#include "scenes.hpp"
#include "zoom3d/io.hpp"
#include "zoom3d/pipeline.hpp"

using namespace zoom3d;

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : ZOOM3D_TEST_DATA;
    std::filesystem::create_directories(dir);

    const int w = 160, h = 96;
    // Ground plane far away, a slanted middle layer and a near box.
    std::vector<float> raw(static_cast<std::size_t>(w) * h, 10.0f);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            float& d = raw[static_cast<std::size_t>(y) * w + x];
            if (x >= 20 && x < 90 && y >= 50) d = 20.0f + 0.125f * (x - 20);
            if (x >= 100 && x < 140 && y >= 20 && y < 70) d = 40.0f;
        }
    }
    io::write_png(dir / "piecewise_image.png", fixtures::natural_image(w, h, 21));
    io::write_kitti_disparity(dir / "piecewise_disparity.png", DisparityMap::raw(w, h, raw));

    // Reload so the golden sees exactly what the command-line path sees.
    const Image img = io::read_png(dir / "piecewise_image.png");
    const DisparityMap dn = load_normalized_disparity(dir / "piecewise_disparity.png", w, h);
    io::write_png(dir / "piecewise_golden_zoom2.png", reference::render_oracle(img, dn, ZoomParams(2.0, 32)));
    std::printf("wrote golden scene into %s\n", dir.c_str());
    return 0;
}
