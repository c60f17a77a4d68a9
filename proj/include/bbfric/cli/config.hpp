#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbfric/constants.hpp"
#include "bbfric/dynamics.hpp"
#include "bbfric/kinematics.hpp"
#include "bbfric/quadrature.hpp"

namespace bbfric::cli {

/// Malformed or out-of-schema configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Spacing { linear, log };

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 2;
  Spacing spacing = Spacing::linear;

  std::vector<double> values() const;
  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;
  std::string quantity = "F_prime";

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Parameters an axis may vary.
const std::vector<std::string>& sweepable_parameters();
/// Quantities a sweep may report.
const std::vector<std::string>& sweep_quantities();

/// Parses "name:min:max:count[:linear|log]". Throws ConfigError.
SweepAxis parse_axis(std::string_view text);

struct ModelSection {
  std::string kind = "lorentz";  // lorentz | delta
  double alpha0_m3 = 0.0;
  double omega0_rad_s = 0.0;
  std::optional<double> gamma_d_rad_s;

  friend bool operator==(const ModelSection&, const ModelSection&) = default;
};

struct SolverSection {
  SolverConfig config;
  double t_start_s = 0.0;
  double t_end_s = 0.0;

  friend bool operator==(const SolverSection& a, const SolverSection& b);
};

struct OutputSection {
  std::string path = "-";
  /// Significant digits; 0 selects the shortest round-trip representation.
  int precision = 0;

  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

/// Everything a run needs, in the units named by the config keys.
struct RunConfig {
  std::optional<PhysicalConstants> constants;

  std::optional<double> T2_K;

  std::optional<double> mass_kg;
  std::optional<double> radius_m;
  std::optional<double> T1_K;
  std::optional<ModelSection> model;

  std::optional<double> beta;
  double omega_rad_s = 0.0;
  double theta_rad = 0.0;

  QuadratureConfig quadrature;
  std::optional<SolverSection> solver;
  OutputSection output;
  std::optional<SweepSpec> sweep;

  const PhysicalConstants& physical_constants() const;
  PolarizabilityModel polarizability() const;
  BathSpec bath() const;
  ParticleSpec particle() const;
  KinematicState state() const;

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

/// Sectioned key = value text. Unknown sections or keys are rejected by name.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v, int precision = 0);

}  // namespace bbfric::cli
