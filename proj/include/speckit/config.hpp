#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "speckit/training.hpp"

namespace speckit {

/// Resolved run configuration for the command-line pipeline. Defaults
/// reproduce the published experiment; a config file overrides them with
/// sectioned `key = value` text.
struct RunConfig {
    WavelengthGrid target_grid{450.0, 1.0, 201};
    WavelengthGrid source_grid{460.0, 1.0, 181};

    double q = 0.015;
    double zeta_assumed = 0.0;  ///< kernel perturbation assumed for the original example

    std::vector<GaussianLine> p_lines;              ///< the original example's true lines
    TrainingSpec training;                          ///< grids and q kept in sync

    FitMode fit_mode = FitMode::scan;
    FitOptions fit_options;
    double g_min_exp = -3.0, g_max_exp = 0.0;
    int g_count = 25;

    double simulate_noise_sd = 0.02;
    std::uint64_t simulate_seed = 20210;

    std::filesystem::path measured_path;  ///< empty: use <out_dir>/measured_spectrum.txt
    std::filesystem::path exact_path;     ///< empty: no true-error validation
    std::filesystem::path out_dir = "out";

    static RunConfig defaults();
    void validate() const;
};

/// Parse and validate a sectioned key/value config file. All seven
/// sections ([grids], [kernel], [lines], [training], [fit], [simulate],
/// [io]) must be present; keys inside a section are optional and default.
/// Relative io paths are resolved against the config file's directory.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace speckit
