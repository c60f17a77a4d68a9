#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bbfric/forces.hpp"

namespace bbfric {

struct SolverConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  /// First trial step in seconds; 0 picks one from the initial deceleration.
  double initial_step = 0.0;
  std::size_t max_steps = 100000;
  /// Output spacing in seconds; 0 records every accepted step.
  double sample_interval = 0.0;
  /// Evaluate the radiation-frame heating rate at each sample (a diagnostic
  /// column; costs one extra double integral per sample).
  bool record_heating = true;

  void validate() const;
};

struct TrajectorySample {
  double t;
  double beta;
  double F_prime_x;
  double Q_dot;
};

enum class TrajectoryStatus { ok, rhs_failure, step_underflow, max_steps };

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  TrajectoryStatus status = TrajectoryStatus::ok;
  std::string message;

  bool ok() const { return status == TrajectoryStatus::ok; }
};

/// d beta / dt = (1 - beta^2)^{3/2} F'_x(beta) / (m c). Omega, theta, T1 and T2 are
/// held fixed. Throws NumericalFailure if the force quadrature does not converge.
double deceleration_rhs(double beta, const ParticleSpec& particle, const BathSpec& bath,
                        double Omega, double theta, const QuadratureConfig& qcfg,
                        const PhysicalConstants& pc = kCodata);

/// Integrates beta(t) from state0 over [t0, t1] with an embedded Dormand-Prince 5(4)
/// pair. Failures end the run early; the samples collected so far are kept and the
/// status says why.
Trajectory evolve(const KinematicState& state0, const ParticleSpec& particle, const BathSpec& bath,
                  double t0, double t1, const SolverConfig& solver, const QuadratureConfig& qcfg,
                  const PhysicalConstants& pc = kCodata);

const char* to_string(TrajectoryStatus status);

}  // namespace bbfric
