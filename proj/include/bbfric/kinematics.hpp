#pragma once

#include <string>
#include <vector>

#include "bbfric/constants.hpp"
#include "bbfric/polarizability.hpp"

namespace bbfric {

/// Radiation background at temperature T2 (K).
class BathSpec {
 public:
  explicit BathSpec(double T2_K);
  double T2() const { return T2_; }
  double thermal_frequency(const PhysicalConstants& pc = kCodata) const {
    return pc.thermal_frequency(T2_);
  }

  friend bool operator==(const BathSpec&, const BathSpec&) = default;

 private:
  double T2_;
};

/// Particle properties held fixed during a run.
class ParticleSpec {
 public:
  ParticleSpec(double mass_kg, double radius_m, double T1_K, PolarizabilityModel model);

  double mass() const { return mass_; }
  double radius() const { return radius_; }
  double T1() const { return T1_; }
  const PolarizabilityModel& model() const { return model_; }
  double thermal_frequency(const PhysicalConstants& pc = kCodata) const {
    return pc.thermal_frequency(T1_);
  }

  ParticleSpec with_T1(double T1_K) const { return {mass_, radius_, T1_K, model_}; }

  friend bool operator==(const ParticleSpec&, const ParticleSpec&) = default;

 private:
  double mass_;
  double radius_;
  double T1_;
  PolarizabilityModel model_;
};

/// Translational velocity beta = V/c along x, rotation rate Omega about an axis
/// making angle theta with the velocity.
class KinematicState {
 public:
  KinematicState(double beta, double Omega, double theta);

  double beta() const { return beta_; }
  double Omega() const { return Omega_; }
  double theta() const { return theta_; }
  double gamma() const { return gamma_; }

  KinematicState with_beta(double beta) const { return {beta, Omega_, theta_}; }

  friend bool operator==(const KinematicState&, const KinematicState&) = default;

 private:
  double beta_;
  double Omega_;
  double theta_;
  double gamma_;
};

/// 1 / sqrt(1 - beta^2), computed from a correctly rounded 1 - beta^2.
double lorentz_gamma(double beta);

/// hbar omega0 / (2 k_B T2).
double reduced_chi(double omega0, double T2_K, const PhysicalConstants& pc = kCodata);

/// Checks for the point-dipole regime: Omega R / c and R against the thermal
/// wavelength 2 pi hbar c / k_B T for both temperatures. Returns human-readable
/// warnings; never throws for well-formed inputs.
std::vector<std::string> validate_dipole_conditions(const ParticleSpec& particle,
                                                    const BathSpec& bath,
                                                    const KinematicState& state,
                                                    const PhysicalConstants& pc = kCodata);

}  // namespace bbfric
