#pragma once

#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace abflux::cli {

/// Stable exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitPhysicsError = 3;

/// Weak value, tilt constant, margins, and the effective potential at unit
/// radius for the configured pre/post pair.
void cmd_weakvalue(const RunConfig& cfg, std::ostream& out);

/// Analytic and exact arm probabilities plus visibility over the theta grid.
void cmd_sweep_theta(const RunConfig& cfg, std::ostream& out);

/// Seeded detector-then-postselect trials at theta_grid.start; optionally
/// dumps the per-trial records as CSV to trials_out_path.
void cmd_montecarlo(const RunConfig& cfg, std::ostream& out,
                    const std::string& trials_out_path = {});

/// Ring-detection probabilities before and after post-selection over the grid,
/// with the full-ring totals appended.
void cmd_ring(const RunConfig& cfg, std::ostream& out);

/// Worker-thread cap: ABFLUX_THREADS when set and positive, else 0 (library default).
unsigned threads_from_env();

/// Round-trip-safe text form of a double (17 significant digits).
std::string format_double(double value);

}  // namespace abflux::cli
