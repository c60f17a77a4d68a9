#include "bbfric/resonance.hpp"

#include <cmath>

#include "bbfric/errors.hpp"
#include "bbfric/roots.hpp"

namespace bbfric {

namespace {

constexpr double kSmallChi = 1e-3;
constexpr double kSmallArg = 1e-4;

// y^5 / sinh^2(chi y). Near y = 0 (the u -> 1 line) the 0/0 is replaced by
// y^3 / chi^2 (1 - (chi y)^2 / 3).
double shifted_line(double y, double chi) {
  const double z = chi * y;
  if (std::abs(y) < kSmallArg) return y * y * y / (chi * chi) * (1.0 - z * z / 3.0);
  const double r = z / std::sinh(z);
  return y * y * y / (chi * chi) * r * r;
}

}  // namespace

ResonanceParams::ResonanceParams(double u_, double chi_, double theta_)
    : u(u_), chi(chi_), theta(theta_) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw InvalidParameter("u must be finite and >= 0");
  if (!(chi > 0.0) || !std::isfinite(chi)) throw InvalidParameter("chi must be finite and > 0");
}

double rotation_correction_G(double chi) {
  if (!(chi > 0.0)) throw InvalidParameter("G: chi must be > 0");
  if (chi < kSmallChi) return 0.6 - 7.0 / 15.0 * chi * chi;
  const double xc = chi / std::tanh(chi);
  return 2.0 - 2.0 * xc + 0.6 * xc * xc - 0.2 * chi * chi;
}

double resonance_force_quadratic(const ResonanceParams& p) {
  const double c2 = std::cos(p.theta) * std::cos(p.theta);
  const double base = p.chi / std::pow(std::sinh(p.chi), 2);
  return -base * (1.0 + p.u * p.u * (3.0 + c2) * rotation_correction_G(p.chi));
}

double resonance_force_exact(const ResonanceParams& p) {
  const double c2 = std::cos(p.theta) * std::cos(p.theta);
  const double s2 = std::sin(p.theta) * std::sin(p.theta);
  const double static_line = 2.0 * (1.0 + s2) / std::pow(std::sinh(p.chi), 2);
  const double rotating = shifted_line(1.0 - p.u, p.chi) + shifted_line(1.0 + p.u, p.chi);
  return -(p.chi / 10.0) * (static_line + (3.0 + c2) * rotating);
}

std::optional<double> acceleration_threshold(double chi, double theta) {
  const double G = rotation_correction_G(chi);
  if (!(G < 0.0)) return std::nullopt;
  const double c2 = std::cos(theta) * std::cos(theta);
  return 1.0 / std::sqrt(-(3.0 + c2) * G);
}

ChiWindow acceleration_window() {
  // G(0+) = 0.6, G(2.5) < 0, G grows like 0.4 chi^2 for large chi
  constexpr double kTol = 1e-12;
  const auto G = [](double chi) { return rotation_correction_G(chi); };
  const RootResult lo = bisect(G, 0.5, 2.5, kTol);
  const RootResult hi = bisect(G, 2.5, 10.0, kTol);
  return {lo.root, hi.root};
}

std::vector<double> default_fig2_chis() { return {1.5, 2.0, 2.5, 3.0}; }

std::vector<Fig2Row> fig2_curves(std::span<const double> u_grid, std::span<const double> chi_list,
                                 double theta) {
  std::vector<Fig2Row> rows;
  rows.reserve(u_grid.size() * chi_list.size());
  for (double chi : chi_list) {
    for (double u : u_grid) {
      const ResonanceParams p(u, chi, theta);
      rows.push_back({chi, u, resonance_force_quadratic(p), resonance_force_exact(p)});
    }
  }
  return rows;
}

}  // namespace bbfric
