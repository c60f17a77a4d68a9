#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace bbfric {

/// Tolerances for the adaptive integrators. The target on the total error is
///   max(abs_tol, rel_tol |value|, l1_tol * integral of |f|).
/// l1_tol defaults to 0; it lets nested callers bound the error against the size
/// of the contributing terms when the signed result may cancel to zero.
struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 2000;
  /// Interior points where the integrand has kinks or narrow peaks.
  std::vector<double> breakpoints;
  double l1_tol = 0.0;

  /// Throws InvalidParameter on an unusable configuration.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions_used = 0;
  bool converged = false;
  /// Estimate of the integral of |f|.
  double l1_norm = 0.0;

  /// The error target this result was held to.
  double target(const QuadratureConfig& cfg) const;
};

using Integrand = std::function<double(double)>;

/// Adaptive 21-point Gauss-Kronrod integration over [a, b]. The interval is first
/// split at every breakpoint in (a, b); afterwards the subinterval with the largest
/// local error is bisected until the error target is met or max_subdivisions is
/// reached. Non-convergence is reported through QuadResult::converged, never thrown.
QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg);

/// Integral over [0, inf) of an integrand bounded by C exp(-decay_rate omega) past the
/// last breakpoint. Integrates successive windows of width ~10 / decay_rate until a
/// sampled bound on the remaining tail falls below a tenth of the error target; the
/// tail bound is included in error_estimate.
QuadResult integrate_semi_infinite(const Integrand& f, double decay_rate,
                                   const QuadratureConfig& cfg);

/// One fixed 21-point Gauss-Kronrod panel with its nested 10-point Gauss value.
struct PanelEstimate {
  double kronrod = 0.0;
  double gauss = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};
PanelEstimate gauss_kronrod21(const Integrand& f, double a, double b);

}  // namespace bbfric
