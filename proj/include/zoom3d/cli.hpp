#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "zoom3d/pipeline.hpp"

namespace zoom3d::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kIoError = 3,
    kDegenerateInput = 4,
};

/// Applies a line-oriented key=value file onto `cfg`. Keys are the long flag
/// names without dashes (zoom, n-channels, max-zoom, ...); '#' starts a
/// comment. Unknown keys and malformed values raise ConfigError.
void apply_config_file(const std::filesystem::path& path, RunConfig& cfg);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zoom3d::cli
