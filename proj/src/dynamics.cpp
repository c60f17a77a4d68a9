#include "bbfric/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bbfric/errors.hpp"

namespace bbfric {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b* (fourth-order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct OutOfDomain {};

class Rhs {
 public:
  Rhs(const ParticleSpec& particle, const BathSpec& bath, const KinematicState& s0,
      const QuadratureConfig& qcfg, const PhysicalConstants& pc)
      : particle_(particle), bath_(bath), Omega_(s0.Omega()), theta_(s0.theta()), qcfg_(qcfg),
        pc_(pc) {}

  // Returns {d beta / dt, F'_x}.
  std::pair<double, double> operator()(double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) throw OutOfDomain{};
    ++evaluations;
    const KinematicState s(beta, Omega_, theta_);
    const ForceResult F = force_comoving(s, particle_, bath_, qcfg_, pc_);
    if (!F.converged) {
      std::ostringstream os;
      os << "force quadrature did not converge at beta = " << beta << " (error " << F.error
         << ")";
      throw NumericalFailure(os.str());
    }
    const double one_minus = std::fma(-beta, beta, 1.0);
    return {one_minus * std::sqrt(one_minus) * F.value / (particle_.mass() * pc_.c()), F.value};
  }

  double heating(double beta) const {
    const KinematicState s(beta, Omega_, theta_);
    return heating_rate_lab(s, particle_, bath_, qcfg_, pc_).value;
  }

  std::size_t evaluations = 0;

 private:
  const ParticleSpec& particle_;
  const BathSpec& bath_;
  double Omega_;
  double theta_;
  const QuadratureConfig& qcfg_;
  const PhysicalConstants& pc_;
};

}  // namespace

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw InvalidParameter("solver: tolerances must be > 0");
  }
  if (initial_step < 0.0 || sample_interval < 0.0) {
    throw InvalidParameter("solver: initial_step and sample_interval must be >= 0");
  }
  if (max_steps < 1) throw InvalidParameter("solver: max_steps must be >= 1");
}

const char* to_string(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::ok: return "ok";
    case TrajectoryStatus::rhs_failure: return "rhs_failure";
    case TrajectoryStatus::step_underflow: return "step_underflow";
    case TrajectoryStatus::max_steps: return "max_steps";
  }
  return "unknown";
}

double deceleration_rhs(double beta, const ParticleSpec& particle, const BathSpec& bath,
                        double Omega, double theta, const QuadratureConfig& qcfg,
                        const PhysicalConstants& pc) {
  const KinematicState s(beta, Omega, theta);
  Rhs rhs(particle, bath, s, qcfg, pc);
  return rhs(beta).first;
}

Trajectory evolve(const KinematicState& state0, const ParticleSpec& particle, const BathSpec& bath,
                  double t0, double t1, const SolverConfig& solver, const QuadratureConfig& qcfg,
                  const PhysicalConstants& pc) {
  solver.validate();
  qcfg.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0)) {
    throw InvalidParameter("evolve: need finite t0 < t1");
  }

  Trajectory traj;
  Rhs rhs(particle, bath, state0, qcfg, pc);
  const auto record = [&](double t, double beta, double force) {
    const double q = solver.record_heating ? rhs.heating(beta) : 0.0;
    traj.samples.push_back({t, beta, force, q});
  };
  const auto abort = [&](TrajectoryStatus st, std::string msg) {
    traj.status = st;
    traj.message = std::move(msg);
    traj.rhs_evaluations = rhs.evaluations;
    return traj;
  };

  double t = t0;
  double y = state0.beta();
  double k1 = 0.0;
  double force = 0.0;
  try {
    std::tie(k1, force) = rhs(y);
  } catch (const NumericalFailure& e) {
    return abort(TrajectoryStatus::rhs_failure, e.what());
  }
  record(t, y, force);

  const double span = t1 - t0;
  double h = solver.initial_step;
  if (h == 0.0) {
    h = k1 != 0.0 ? 0.01 * (std::abs(y) + solver.abs_tol) / std::abs(k1) : span;
  }
  if (solver.sample_interval > 0.0) h = std::min(h, solver.sample_interval);
  h = std::min(h, span);

  std::size_t next_sample = 1;
  const auto next_output_time = [&]() {
    if (solver.sample_interval <= 0.0) return t1;
    return std::min(t1, t0 + static_cast<double>(next_sample) * solver.sample_interval);
  };

  while (t < t1) {
    if (traj.steps + traj.rejected_steps >= solver.max_steps) {
      return abort(TrajectoryStatus::max_steps, "maximum number of steps reached");
    }
    const double t_out = next_output_time();
    bool lands_on_output = false;
    if (t + h >= t_out) {
      h = t_out - t;
      lands_on_output = true;
    }
    if (!(h > 1e-14 * std::max(std::abs(t), span))) {
      std::ostringstream os;
      os << "step size underflow at t = " << t;
      return abort(TrajectoryStatus::step_underflow, os.str());
    }

    double y_new = 0.0, k7 = 0.0, f_new = 0.0, err = 0.0;
    bool in_domain = true;
    try {
      const double k2 = rhs(y + h * a21 * k1).first;
      const double k3 = rhs(y + h * (a31 * k1 + a32 * k2)).first;
      const double k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3)).first;
      const double k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).first;
      const double k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).first;
      y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      std::tie(k7, f_new) = rhs(y_new);
      const double delta = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double scale = solver.abs_tol + solver.rel_tol * std::max(std::abs(y), std::abs(y_new));
      err = std::abs(delta) / scale;
    } catch (const OutOfDomain&) {
      in_domain = false;
    } catch (const NumericalFailure& e) {
      return abort(TrajectoryStatus::rhs_failure, e.what());
    }

    if (!in_domain) {
      // a stage left [0, 1): shrink the step rather than clamp the state
      ++traj.rejected_steps;
      h *= 0.25;
      continue;
    }
    if (err > 1.0) {
      ++traj.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    ++traj.steps;
    const double h_used = h;
    t = lands_on_output ? t_out : t + h;
    y = y_new;
    k1 = k7;
    force = f_new;
    if (lands_on_output || solver.sample_interval <= 0.0) {
      record(t, y, force);
      if (lands_on_output && solver.sample_interval > 0.0) ++next_sample;
    }
    const double grow = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    h = h_used * grow;
    if (solver.sample_interval > 0.0) h = std::min(h, solver.sample_interval);
  }
  traj.rhs_evaluations = rhs.evaluations;
  return traj;
}

}  // namespace bbfric
