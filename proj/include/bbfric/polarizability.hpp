#pragma once

namespace bbfric {

enum class ModelKind { smooth, delta_resonance };

/// Imaginary part of an isotropic dipole polarizability, alpha''(omega).
///
/// Two kinds exist. The smooth kind is a damped Lorentz oscillator
///   alpha''(w) = alpha0 w0^2 g w / ((w0^2 - w^2)^2 + g^2 w^2)
/// and may be evaluated pointwise. The delta-resonance kind is the g -> 0 limit,
///   alpha''(w) = (pi alpha0 w0 / 2) [delta(w - w0) - delta(w + w0)],
/// which is a distribution; only closed-form code may consume it, and any pointwise
/// evaluation throws UnsupportedEvaluation.
///
/// Model contract for smooth kinds: alpha'' is odd, positive for w > 0, has a finite
/// positive slope alpha''(w)/w at the origin, and decays at least like w^-3.
class PolarizabilityModel {
 public:
  /// alpha0 in m^3, omega0 and gamma_d in rad/s; all must be positive.
  static PolarizabilityModel lorentz(double alpha0, double omega0, double gamma_d);
  static PolarizabilityModel delta_resonance(double alpha0, double omega0);

  ModelKind kind() const { return kind_; }
  bool is_smooth() const { return kind_ == ModelKind::smooth; }
  double alpha0() const { return alpha0_; }
  double omega0() const { return omega0_; }
  /// Damping rate; zero for the delta kind.
  double gamma_d() const { return gamma_d_; }

  double alpha_imag(double omega) const;
  /// alpha''(omega) / omega, finite and even everywhere including omega = 0.
  double alpha_imag_over_omega(double omega) const;
  /// lim_{omega -> 0} alpha''(omega) / omega.
  double slope_at_zero() const { return alpha_imag_over_omega(0.0); }

  friend bool operator==(const PolarizabilityModel&, const PolarizabilityModel&) = default;

 private:
  PolarizabilityModel(ModelKind kind, double alpha0, double omega0, double gamma_d)
      : kind_(kind), alpha0_(alpha0), omega0_(omega0), gamma_d_(gamma_d) {}

  void require_smooth() const;

  ModelKind kind_;
  double alpha0_;
  double omega0_;
  double gamma_d_;
};

inline PolarizabilityModel make_lorentz_model(double alpha0, double omega0, double gamma_d) {
  return PolarizabilityModel::lorentz(alpha0, omega0, gamma_d);
}

}  // namespace bbfric
