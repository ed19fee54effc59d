#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abflux/abflux.hpp"

namespace abflux::cli {

/// Bad or missing configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct CylinderSpec {
    int j_min = 0;
    std::vector<Complex> amps;
};

struct ThetaGrid {
    double start = 0.0;
    double stop = 0.0;
    std::uint64_t steps = 0;
};

/// One run's worth of parameters. Fields mirror the config-file keys; complex
/// amplitudes are given as [re, im] pairs.
struct RunConfig {
    double q = 1.0;
    double K = 0.0;
    double hbar = 1.0;
    std::optional<CylinderSpec> cylinder_pre;
    std::optional<CylinderSpec> cylinder_post;
    std::optional<ThetaGrid> theta_grid;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    std::optional<double> epsilon;
    std::optional<double> alpha_override;
    std::string output_path;           // empty = stdout
    std::string output_format = "csv";  // csv | json
};

/// Parses a JSON config document. Throws ConfigError on malformed input.
RunConfig parse_config_text(const std::string& text);

/// Reads and parses a config file. Throws ConfigError.
RunConfig parse_config_file(const std::string& path);

Coupling coupling_from(const RunConfig& cfg);
CylinderState cylinder_from(const CylinderSpec& spec);

/// Expands the theta grid into `steps` points from start to stop inclusive,
/// validating the range against [lo, hi]. Throws ConfigError on an empty or
/// out-of-range grid.
std::vector<double> expand_grid(const ThetaGrid& grid, double lo, double hi);

}  // namespace abflux::cli
