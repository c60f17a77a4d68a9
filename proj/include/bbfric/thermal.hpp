#pragma once

// Singularity-free pieces of the thermal occupation factor coth(omega / 2 w_T),
// where w_T = k_B T / hbar is a thermal frequency. Everything here is
// frequency-only; temperatures are converted before reaching these helpers.

#include "bbfric/constants.hpp"

namespace bbfric {

class PolarizabilityModel;

namespace thermal {

/// Below this |y| the coth-type helpers switch to their Taylor series.
inline constexpr double kSeriesThreshold = 1e-4;

/// y coth(y); even, equal to 1 at y = 0.
double y_coth_y(double y);

/// coth(y) - sign(y); odd, behaves like 1/y near 0 and 2 e^{-2|y|} for large |y|.
/// Undefined (infinite) at y = 0; callers multiply by a vanishing factor first.
double coth_excess(double y);

/// x (coth(x / 2w) - sign(x)); finite everywhere, equals 2w at x = 0.
double x_coth_excess(double x, double w);

/// 1 / sinh^2(y) for y != 0.
double inv_sinh2(double y);

/// y^n / sinh^2(y) style kernel used by the nonrelativistic formulas:
/// omega^5 / sinh^2(omega / 2w), finite at omega = 0.
double omega5_over_sinh2(double omega, double w);

/// Planck occupation 1 / (e^y - 1) for y > 0.
double bose(double y);

}  // namespace thermal

/// alpha''(omega) coth(omega / 2w); even in omega, finite at omega = 0 where it
/// equals 2 w slope. Smooth models only.
double alpha_imag_coth_w(const PolarizabilityModel& model, double omega, double w);

/// Temperature-facing form of alpha_imag_coth_w.
double alpha_imag_coth(const PolarizabilityModel& model, double omega, double T_K,
                       const PhysicalConstants& pc = kCodata);

/// alpha''(omega) [coth(omega / 2w) - sign(omega)]; even, finite at omega = 0.
double alpha_imag_coth_excess_w(const PolarizabilityModel& model, double omega, double w);

}  // namespace bbfric
