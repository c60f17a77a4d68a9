#pragma once

#include <optional>
#include <utility>

#include "bbfric/constants.hpp"
#include "bbfric/kinematics.hpp"
#include "bbfric/quadrature.hpp"

namespace bbfric {

/// A force or power with its quadrature error estimate.
struct ForceResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  /// Size of the terms that cancel to produce `value` (same units): the integral of
  /// |integrand|, or for radiation-frame results of the separate bath and particle
  /// terms.
  double magnitude = 0.0;
};

/// Lab-frame drag, heating, and the co-moving force computed both ways.
struct ForceBreakdown {
  ForceResult F_x;              // N, radiation frame
  ForceResult Q_dot;            // W, radiation frame
  ForceResult F_prime_lab;      // N, co-moving, from F_x and Q_dot
  ForceResult F_prime_direct;   // N, co-moving, direct evaluation
  /// F_prime_direct / F0 with F0 = hbar V alpha0 omega0^5 / (3 c^5); empty when V = 0.
  std::optional<double> normalized;

  bool converged() const {
    return F_x.converged && Q_dot.converged && F_prime_lab.converged && F_prime_direct.converged;
  }
};

struct WeightPair {
  double first = 0.0;
  double second = 0.0;
};

/// Angular weights of the radiation-frame integrands for the non-rotating (first)
/// and rotating (second) dipole components. mu is the direction cosine of the photon
/// relative to the velocity.
WeightPair weight_lab(double beta, double mu, double theta);

/// The same weights seen from the co-moving frame: {A, B}, both even in mu and
/// summing to 2.
WeightPair weight_comoving(double mu, double theta);

enum class ComovingWeight { A, B };

/// K_X(omega) = 2 int_{-1}^{1} mu X(mu, theta) / (exp(gamma omega (1 + beta mu) / w_T2) - 1) dmu.
/// Odd in omega; zero at beta = 0.
ForceResult kernel_K(ComovingWeight which, double omega, double beta, double theta, double T2_K,
                     const QuadratureConfig& cfg, const PhysicalConstants& pc = kCodata);

/// Tangential force in the co-moving frame, evaluated directly on [0, inf) after
/// folding negative frequencies and removing the vacuum part of coth. Independent of
/// the particle temperature.
ForceResult force_comoving(const KinematicState& state, const ParticleSpec& particle,
                           const BathSpec& bath, const QuadratureConfig& cfg,
                           const PhysicalConstants& pc = kCodata);

/// Tangential force in the radiation frame, two-sided frequency integral.
ForceResult force_lab(const KinematicState& state, const ParticleSpec& particle,
                      const BathSpec& bath, const QuadratureConfig& cfg,
                      const PhysicalConstants& pc = kCodata);

/// Net power absorbed by the particle, radiation frame.
ForceResult heating_rate_lab(const KinematicState& state, const ParticleSpec& particle,
                             const BathSpec& bath, const QuadratureConfig& cfg,
                             const PhysicalConstants& pc = kCodata);

/// F'_x = F_x - beta / (1 - beta^2) Q_dot / c.
ForceResult force_comoving_from_lab(const KinematicState& state, const ParticleSpec& particle,
                                    const BathSpec& bath, const QuadratureConfig& cfg,
                                    const PhysicalConstants& pc = kCodata);

/// Combines already computed lab-frame results.
ForceResult combine_lab_frame(double beta, const ForceResult& F_x, const ForceResult& Q_dot,
                              const PhysicalConstants& pc = kCodata);

/// Leading order in V of the co-moving force (valid for beta << 1).
ForceResult force_nonrel(double V, double Omega, double theta, const PolarizabilityModel& model,
                         double T2_K, const QuadratureConfig& cfg,
                         const PhysicalConstants& pc = kCodata);

/// Non-rotating, nonrelativistic friction on an isotropic dipole.
ForceResult force_mkrtchian(double V, const PolarizabilityModel& model, double T2_K,
                            const QuadratureConfig& cfg, const PhysicalConstants& pc = kCodata);

/// hbar V alpha0 omega0^5 / (3 c^5): the natural force unit for a resonant particle.
double force_unit(double V, const PolarizabilityModel& model, const PhysicalConstants& pc = kCodata);

/// All of the above at one point.
ForceBreakdown evaluate_forces(const KinematicState& state, const ParticleSpec& particle,
                               const BathSpec& bath, const QuadratureConfig& cfg,
                               const PhysicalConstants& pc = kCodata);

namespace detail {

/// omega^4 times the braces of the radiation-frame integrands at one (omega, mu),
/// weights excluded: {non-rotating term, rotating term}. Frequencies in rad/s, w1/w2
/// thermal frequencies of particle and bath.
WeightPair lab_braces(const PolarizabilityModel& model, double omega, double mu, double beta,
                      double gamma, double Omega, double w1, double w2);

/// Braces without the omega^4 factor, for checking the omega -> 0 limit.
WeightPair lab_braces_reduced(const PolarizabilityModel& model, double omega, double mu,
                              double beta, double gamma, double Omega, double w1, double w2);

}  // namespace detail

}  // namespace bbfric
