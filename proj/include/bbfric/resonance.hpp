#pragma once

#include <optional>
#include <span>
#include <vector>

// Closed-form co-moving friction for a particle with a single sharp absorption line
// at omega0, to leading order in V. Forces are normalized to
// F0 = hbar V alpha0 omega0^5 / (3 c^5).

namespace bbfric {

struct ResonanceParams {
  /// Rotation ratio Omega / omega0, >= 0.
  double u;
  /// Reduced inverse temperature hbar omega0 / (2 k_B T2), > 0.
  double chi;
  double theta;

  ResonanceParams(double u, double chi, double theta = 0.0);
};

/// Coefficient of u^2 (3 + cos^2 theta) in the small-rotation expansion:
/// G = 2 - 2 chi coth chi + 0.6 chi^2 coth^2 chi - 0.2 chi^2.
double rotation_correction_G(double chi);

/// -(chi / sinh^2 chi) [1 + u^2 (3 + cos^2 theta) G(chi)]
double resonance_force_quadratic(const ResonanceParams& p);

/// Same force without expanding in u.
double resonance_force_exact(const ResonanceParams& p);

/// Smallest u at which the quadratic form turns non-negative, if any.
std::optional<double> acceleration_threshold(double chi, double theta = 0.0);

struct ChiWindow {
  double lo;
  double hi;
};

/// The interval of chi on which G < 0, i.e. where fast enough rotation can flip
/// the sign of the force.
ChiWindow acceleration_window();

struct Fig2Row {
  double chi;
  double u;
  double f_quadratic;
  double f_exact;
};

std::vector<double> default_fig2_chis();

/// Normalized force curves, chi-major then u-minor.
std::vector<Fig2Row> fig2_curves(std::span<const double> u_grid, std::span<const double> chi_list,
                                 double theta = 0.0);

}  // namespace bbfric
