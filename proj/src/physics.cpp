#include <cmath>
#include <numbers>
#include <sstream>

#include "bbfric/constants.hpp"
#include "bbfric/errors.hpp"
#include "bbfric/kinematics.hpp"
#include "bbfric/polarizability.hpp"
#include "bbfric/thermal.hpp"

namespace bbfric {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and > 0 (got " << v << ")";
    throw InvalidParameter(os.str());
  }
}

}  // namespace

PhysicalConstants PhysicalConstants::custom(double hbar, double k_B, double c) {
  require_positive(hbar, "hbar");
  require_positive(k_B, "k_B");
  require_positive(c, "c");
  return PhysicalConstants(hbar, k_B, c);
}

double PhysicalConstants::thermal_frequency(double temperature_K) const {
  require_positive(temperature_K, "temperature");
  return k_B_ * temperature_K / hbar_;
}

// ---------------------------------------------------------------------------
// Polarizability

PolarizabilityModel PolarizabilityModel::lorentz(double alpha0, double omega0, double gamma_d) {
  require_positive(alpha0, "alpha0");
  require_positive(omega0, "omega0");
  require_positive(gamma_d, "gamma_d");
  return PolarizabilityModel(ModelKind::smooth, alpha0, omega0, gamma_d);
}

PolarizabilityModel PolarizabilityModel::delta_resonance(double alpha0, double omega0) {
  require_positive(alpha0, "alpha0");
  require_positive(omega0, "omega0");
  return PolarizabilityModel(ModelKind::delta_resonance, alpha0, omega0, 0.0);
}

void PolarizabilityModel::require_smooth() const {
  if (kind_ != ModelKind::smooth) {
    throw UnsupportedEvaluation(
        "delta-resonance polarizability is a distribution and cannot be evaluated pointwise");
  }
}

double PolarizabilityModel::alpha_imag_over_omega(double omega) const {
  require_smooth();
  const double w0sq = omega0_ * omega0_;
  const double detune = w0sq - omega * omega;
  return alpha0_ * w0sq * gamma_d_ / (detune * detune + gamma_d_ * gamma_d_ * omega * omega);
}

double PolarizabilityModel::alpha_imag(double omega) const {
  return omega * alpha_imag_over_omega(omega);
}

// ---------------------------------------------------------------------------
// Thermal helpers

namespace thermal {

double y_coth_y(double y) {
  const double a = std::abs(y);
  if (a < kSeriesThreshold) {
    const double a2 = a * a;
    return 1.0 + a2 / 3.0 - a2 * a2 / 45.0;
  }
  // coth(a) = 1 + 2 / (e^{2a} - 1)
  return a + 2.0 * a / std::expm1(2.0 * a);
}

double coth_excess(double y) {
  const double a = std::abs(y);
  const double mag = 2.0 / std::expm1(2.0 * a);
  return y < 0.0 ? -mag : mag;
}

double x_coth_excess(double x, double w) {
  const double y = x / (2.0 * w);
  const double a = std::abs(y);
  if (a < 0.5) {
    // x coth(y) - |x| = 2w (y coth y) - |x|; no cancellation for |y| < 1/2
    return 2.0 * w * y_coth_y(y) - std::abs(x);
  }
  return std::abs(x) * 2.0 / std::expm1(2.0 * a);
}

double inv_sinh2(double y) {
  const double a = std::abs(y);
  const double e = std::exp(-2.0 * a);
  const double d = -std::expm1(-2.0 * a);
  return 4.0 * e / (d * d);
}

double omega5_over_sinh2(double omega, double w) {
  const double y = omega / (2.0 * w);
  const double a = std::abs(y);
  if (a < kSeriesThreshold) {
    // (y / sinh y)^2 = 1 - y^2/3 + ...
    const double ratio = 1.0 - a * a / 3.0;
    return omega * omega * omega * 4.0 * w * w * ratio;
  }
  return std::pow(omega, 5) * inv_sinh2(y);
}

double bose(double y) { return 1.0 / std::expm1(y); }

}  // namespace thermal

double alpha_imag_coth_w(const PolarizabilityModel& model, double omega, double w) {
  // alpha''(x) coth(x/2w) = [alpha''(x)/x] 2w [y coth y], y = x/2w
  return model.alpha_imag_over_omega(omega) * 2.0 * w * thermal::y_coth_y(omega / (2.0 * w));
}

double alpha_imag_coth(const PolarizabilityModel& model, double omega, double T_K,
                       const PhysicalConstants& pc) {
  return alpha_imag_coth_w(model, omega, pc.thermal_frequency(T_K));
}

double alpha_imag_coth_excess_w(const PolarizabilityModel& model, double omega, double w) {
  return model.alpha_imag_over_omega(omega) * thermal::x_coth_excess(omega, w);
}

// ---------------------------------------------------------------------------
// Specs

BathSpec::BathSpec(double T2_K) : T2_(T2_K) { require_positive(T2_K, "T2"); }

ParticleSpec::ParticleSpec(double mass_kg, double radius_m, double T1_K, PolarizabilityModel model)
    : mass_(mass_kg), radius_(radius_m), T1_(T1_K), model_(model) {
  require_positive(mass_kg, "mass");
  require_positive(radius_m, "radius");
  require_positive(T1_K, "T1");
}

// fma gives 1 - beta^2 with a single rounding: accurate near beta = 1 and monotone.
double lorentz_gamma(double beta) { return 1.0 / std::sqrt(std::fma(-beta, beta, 1.0)); }

KinematicState::KinematicState(double beta, double Omega, double theta)
    : beta_(beta), Omega_(Omega), theta_(theta), gamma_(1.0) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw InvalidParameter("beta must lie in [0, 1)");
  }
  if (!(Omega >= 0.0) || !std::isfinite(Omega)) {
    throw InvalidParameter("Omega must be finite and >= 0");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw InvalidParameter("theta must lie in [0, pi]");
  }
  gamma_ = lorentz_gamma(beta);
}

double reduced_chi(double omega0, double T2_K, const PhysicalConstants& pc) {
  require_positive(omega0, "omega0");
  return omega0 / (2.0 * pc.thermal_frequency(T2_K));
}

std::vector<std::string> validate_dipole_conditions(const ParticleSpec& particle,
                                                    const BathSpec& bath,
                                                    const KinematicState& state,
                                                    const PhysicalConstants& pc) {
  constexpr double kMargin = 0.1;
  std::vector<std::string> warnings;
  const double R = particle.radius();

  const double rim_speed = state.Omega() * R / pc.c();
  if (rim_speed > kMargin) {
    std::ostringstream os;
    os << "rotation too fast for the point-dipole regime: Omega R / c = " << rim_speed;
    warnings.push_back(os.str());
  }

  const auto check_size = [&](double T, const char* label) {
    const double wavelength = 2.0 * std::numbers::pi * pc.hbar() * pc.c() / (pc.k_B() * T);
    if (R > kMargin * wavelength) {
      std::ostringstream os;
      os << "particle radius " << R << " m is not small against the thermal wavelength "
         << wavelength << " m at " << label << " = " << T << " K";
      warnings.push_back(os.str());
    }
  };
  check_size(particle.T1(), "T1");
  check_size(bath.T2(), "T2");
  return warnings;
}

}  // namespace bbfric
