#pragma once

namespace zoom3d::detail {

// Raster coordinate whose content lands at raster `i` after magnifying by
// `ratio` about `center`. Exact for ratio == 1.
inline double magnified_source(int i, double center, double ratio) noexcept {
    return (i - center) / ratio + center;
}

}  // namespace zoom3d::detail
