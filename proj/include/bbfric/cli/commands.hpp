#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bbfric/cli/config.hpp"

namespace bbfric::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitNonConvergence = 3,
  kExitSolverAbort = 4,
};

inline constexpr const char* kVersion = "0.1.0";

/// Lab-frame and co-moving forces at the configured state.
int cmd_force(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Closed-form rotation threshold for each chi, plus the chi window once.
int cmd_threshold(std::span<const double> chis, double theta, const OutputSection& output,
                  std::ostream& out);

/// Normalized resonance force curves on u in [0, u_max], theta = 0.
int cmd_fig2(double u_max, std::size_t n_points, std::span<const double> chis,
             const OutputSection& output, std::ostream& out);

/// Cartesian sweep. Grid points are evaluated on `threads` workers; rows come out in
/// grid order (first axis slowest).
int cmd_sweep(const RunConfig& config, const SweepSpec& sweep, unsigned threads, std::ostream& out,
              std::ostream& diag);

/// beta(t) trajectory.
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Full command-line front end; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view data);

}  // namespace bbfric::cli
