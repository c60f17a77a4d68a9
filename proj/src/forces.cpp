#include "bbfric/forces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bbfric/errors.hpp"
#include "bbfric/thermal.hpp"

namespace bbfric {

namespace {

using std::numbers::pi;

void require_smooth(const PolarizabilityModel& model, const char* who) {
  if (!model.is_smooth()) {
    throw UnsupportedEvaluation(std::string(who) +
                                ": delta-resonance models are handled in closed form only");
  }
}

// Tolerances handed to the inner (direction-cosine) integral of a nested pair.
QuadratureConfig inner_config(const QuadratureConfig& outer) {
  QuadratureConfig inner;
  inner.rel_tol = 0.1 * outer.rel_tol;
  inner.abs_tol = 0.0;
  inner.l1_tol = 1e-3 * outer.rel_tol;
  inner.max_subdivisions = outer.max_subdivisions;
  if (!(inner.rel_tol > 0.0)) inner.rel_tol = 1e-10;
  return inner;
}

// Outer tolerances: the result may cancel (zero crossing, beta = 0), so the error is
// also allowed to sit at 1% of the relative tolerance times the absolute integral.
QuadratureConfig outer_config(const QuadratureConfig& cfg, std::vector<double> breakpoints) {
  QuadratureConfig outer = cfg;
  outer.l1_tol = std::max(cfg.l1_tol, 1e-2 * cfg.rel_tol);
  outer.breakpoints.insert(outer.breakpoints.end(), breakpoints.begin(), breakpoints.end());
  return outer;
}

ForceResult scaled(const QuadResult& q, double factor) {
  return {factor * q.value, std::abs(factor) * q.error_estimate, q.converged,
          std::abs(factor) * q.l1_norm};
}

ForceResult sum(const ForceResult& x, const ForceResult& y) {
  return {x.value + y.value, x.error + y.error, x.converged && y.converged,
          x.magnitude + y.magnitude};
}

void push_positive(std::vector<double>& out, double x) {
  if (x > 0.0 && std::isfinite(x)) out.push_back(x);
}

// ---------------------------------------------------------------------------
// Co-moving frame

// Peaks of alpha''(w) and alpha''(w +- Omega) on w > 0.
std::vector<double> comoving_breakpoints(const PolarizabilityModel& model, double Omega) {
  std::vector<double> bp;
  const double w0 = model.omega0();
  push_positive(bp, w0);
  if (Omega > 0.0) {
    push_positive(bp, w0 + Omega);
    push_positive(bp, std::abs(w0 - Omega));
  }
  return bp;
}

// 2 int_{-1}^{1} mu [cA A + cB B] n(gamma w (1 + beta mu) / w2) dmu. A and B are even
// in mu, so this folds onto [0, 1] with n(x+) - n(x-), x+- = s (1 +- beta mu), which is
// evaluated as expm1(x+ - x-) n(x+) / expm1(-x-) to stay accurate as beta -> 0.
QuadResult comoving_inner(double cA, double cB, double omega, double beta, double gamma,
                          double theta, double w2, const QuadratureConfig& inner) {
  const double scale = gamma * omega / w2;
  const auto g = [&](double mu) {
    if (mu == 0.0) return 0.0;
    const WeightPair x = weight_comoving(mu, theta);
    const double xp = scale * (1.0 + beta * mu);
    const double xm = scale * (1.0 - beta * mu);
    const double diff = std::expm1(2.0 * scale * beta * mu) / (std::expm1(xp) * std::expm1(-xm));
    return 2.0 * mu * (cA * x.first + cB * x.second) * diff;
  };
  return integrate_finite(g, 0.0, 1.0, inner);
}

// ---------------------------------------------------------------------------
// Radiation frame

struct LabSetup {
  const PolarizabilityModel* model;
  double beta, gamma, Omega, theta, w1, w2;
};

// Direction cosines where the Doppler-shifted frequency gamma w (1 + beta mu) meets
// a resonance or where the rotating term changes sign.
std::vector<double> lab_features(const LabSetup& s) {
  const double w0 = s.model->omega0();
  std::vector<double> t = {w0, -w0};
  if (s.Omega > 0.0) {
    t.push_back(w0 - s.Omega);
    t.push_back(-w0 - s.Omega);
    t.push_back(-s.Omega);
  }
  return t;
}

std::vector<double> lab_inner_breakpoints(const LabSetup& s, double omega) {
  std::vector<double> bp;
  if (s.beta <= 0.0) return bp;
  for (double t : lab_features(s)) {
    const double mu = (t / (s.gamma * omega) - 1.0) / s.beta;
    if (mu > -1.0 && mu < 1.0) bp.push_back(mu);
  }
  return bp;
}

// Outer breakpoints on each half line (as positive magnitudes).
std::pair<std::vector<double>, std::vector<double>> lab_outer_breakpoints(const LabSetup& s) {
  std::vector<double> pos, neg;
  for (double t : lab_features(s)) {
    for (double d : {1.0 + s.beta, 1.0 - s.beta}) {
      const double x = t / (s.gamma * d);
      if (x > 0.0) push_positive(pos, x);
      if (x < 0.0) push_positive(neg, -x);
    }
  }
  return {pos, neg};
}

enum class LabMoment { force, heating };

// Bath and particle terms can cancel down to rounding noise (T1 = T2 at rest), so
// error targets never go below this fraction of the size of the separate terms.
constexpr double kCancellationFloor = 1e-12;

// |bath term| + |particle term| for each bracket, weights excluded.
WeightPair lab_term_sizes(const PolarizabilityModel& model, double omega, double mu,
                          const LabSetup& s) {
  using thermal::x_coth_excess;
  const double a = s.gamma * omega * (1.0 + s.beta * mu);
  const double b = a + s.Omega;
  const double w3 = std::abs(omega * omega * omega);
  const double w4 = w3 * std::abs(omega);
  const double bath = x_coth_excess(omega, s.w2);
  const double first = std::abs(model.alpha_imag(a)) * w3 * bath +
                       w4 * std::abs(model.alpha_imag_over_omega(a)) * x_coth_excess(a, s.w1);
  const double alpha_b = std::abs(model.alpha_imag(b));
  const double second = alpha_b * w3 * bath +
                        w4 * std::abs(model.alpha_imag_over_omega(b)) * x_coth_excess(b, s.w1) +
                        2.0 * w4 * alpha_b * ((omega > 0.0) != (b > 0.0) ? 1.0 : 0.0);
  return {first, second};
}

ForceResult lab_integral(const LabSetup& s, LabMoment moment, const QuadratureConfig& cfg) {
  const QuadratureConfig inner = inner_config(cfg);
  const auto [bp_pos, bp_neg] = lab_outer_breakpoints(s);

  const auto factor = [&](double mu) {
    return moment == LabMoment::force ? mu : 1.0 + s.beta * mu;
  };

  // one Kronrod panel per breakpoint interval: a rough size of the mu-integral
  const auto inner_size = [&](double omega, const std::vector<double>& bp) {
    std::vector<double> cuts{-1.0};
    cuts.insert(cuts.end(), bp.begin(), bp.end());
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(1.0);
    const auto g = [&](double mu) {
      const WeightPair w = weight_lab(s.beta, mu, s.theta);
      const WeightPair t = lab_term_sizes(*s.model, omega, mu, s);
      return std::abs(factor(mu)) * (w.first * t.first + w.second * t.second);
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      total += gauss_kronrod21(g, cuts[i], cuts[i + 1]).l1;
    }
    return total;
  };

  const auto outer_integrand = [&](double omega) {
    if (omega == 0.0) return 0.0;
    QuadratureConfig in = inner;
    in.breakpoints = lab_inner_breakpoints(s, omega);
    in.abs_tol = kCancellationFloor * inner_size(omega, in.breakpoints);
    const auto g = [&](double mu) {
      const WeightPair w = weight_lab(s.beta, mu, s.theta);
      const WeightPair br =
          detail::lab_braces(*s.model, omega, mu, s.beta, s.gamma, s.Omega, s.w1, s.w2);
      return factor(mu) * (w.first * br.first + w.second * br.second);
    };
    return integrate_finite(g, -1.0, 1.0, in).value;
  };

  // slowest exponential envelope: bath occupation, or particle occupation at the
  // most red-shifted direction
  const double rate = std::min(1.0 / s.w2, s.gamma * (1.0 - s.beta) / s.w1);

  const auto half_line = [&](double sign, const std::vector<double>& bp) {
    const auto f = [&](double x) { return outer_integrand(sign * x); };
    QuadratureConfig rough;
    rough.rel_tol = 1e-3;
    rough.max_subdivisions = cfg.max_subdivisions;
    rough.breakpoints = bp;
    const double size = integrate_semi_infinite(
        [&](double x) { return x == 0.0 ? 0.0 : inner_size(sign * x, lab_inner_breakpoints(s, sign * x)); },
        rate, rough).value;
    QuadratureConfig outer = outer_config(cfg, bp);
    outer.abs_tol = std::max(outer.abs_tol, kCancellationFloor * size);
    ForceResult r = scaled(integrate_semi_infinite(f, rate, outer), 1.0);
    r.magnitude = std::max(r.magnitude, size);
    return r;
  };
  return sum(half_line(1.0, bp_pos), half_line(-1.0, bp_neg));
}

LabSetup make_lab_setup(const KinematicState& state, const ParticleSpec& particle,
                        const BathSpec& bath, const PhysicalConstants& pc) {
  return {&particle.model(), state.beta(), state.gamma(), state.Omega(), state.theta(),
          particle.thermal_frequency(pc), bath.thermal_frequency(pc)};
}

}  // namespace

// ---------------------------------------------------------------------------

WeightPair weight_lab(double beta, double mu, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double transverse = (1.0 - beta * beta) * (1.0 - mu * mu);
  const double longitudinal = (1.0 + beta * beta) * (1.0 + mu * mu) + 4.0 * beta * mu;
  return {transverse * c2 + longitudinal * s2 / 2.0,
          transverse * s2 + longitudinal * (1.0 + c2) / 2.0};
}

WeightPair weight_comoving(double mu, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double mu2 = mu * mu;
  return {(1.0 - mu2) * c2 + 0.5 * (1.0 + mu2) * s2,
          (1.0 - mu2) * s2 + 0.5 * (1.0 + mu2) * (1.0 + c2)};
}

namespace detail {

WeightPair lab_braces(const PolarizabilityModel& model, double omega, double mu, double beta,
                      double gamma, double Omega, double w1, double w2) {
  using thermal::x_coth_excess;
  // coth(x / 2w) = sign(x) + excess; the excess pieces each decay exponentially, so
  // the large-|omega| cancellation between bath and particle terms never happens in
  // floating point.
  // Both terms are written as omega^4 r(x) [(x / omega) bath - particle] with
  // r = alpha'' / omega, so equal temperatures at rest cancel exactly.
  const double a = gamma * omega * (1.0 + beta * mu);
  const double b = a + Omega;
  const double w4 = omega * omega * omega * omega;
  const double bath = x_coth_excess(omega, w2);

  const double first =
      w4 * model.alpha_imag_over_omega(a) * ((a / omega) * bath - x_coth_excess(a, w1));

  const double r_b = model.alpha_imag_over_omega(b);
  double second = w4 * r_b * ((b / omega) * bath - x_coth_excess(b, w1));
  const double alpha_b = r_b * b;
  const double sign_jump = (omega > 0.0 ? 1.0 : -1.0) - (b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0));
  second += w4 * alpha_b * sign_jump;
  return {first, second};
}

WeightPair lab_braces_reduced(const PolarizabilityModel& model, double omega, double mu,
                              double beta, double gamma, double Omega, double w1, double w2) {
  using thermal::y_coth_y;
  const double doppler = gamma * (1.0 + beta * mu);
  const double a = doppler * omega;
  const double b = a + Omega;
  const double bath = 2.0 * w2 * y_coth_y(omega / (2.0 * w2));  // omega coth(omega / 2 w2)

  const double first = model.alpha_imag_over_omega(a) * doppler * bath -
                       model.alpha_imag_over_omega(a) * 2.0 * w1 * y_coth_y(a / (2.0 * w1));
  const double b_over_omega = Omega == 0.0 ? doppler : doppler + Omega / omega;
  const double second = model.alpha_imag_over_omega(b) * b_over_omega * bath -
                        model.alpha_imag_over_omega(b) * 2.0 * w1 * y_coth_y(b / (2.0 * w1));
  return {first, second};
}

}  // namespace detail

ForceResult kernel_K(ComovingWeight which, double omega, double beta, double theta, double T2_K,
                     const QuadratureConfig& cfg, const PhysicalConstants& pc) {
  cfg.validate();
  if (!(beta >= 0.0 && beta < 1.0)) throw InvalidParameter("kernel_K: beta must lie in [0, 1)");
  if (omega == 0.0) throw InvalidParameter("kernel_K: omega must be nonzero");
  if (beta == 0.0) return {0.0, 0.0, true, 0.0};
  const double w2 = pc.thermal_frequency(T2_K);
  const double cA = which == ComovingWeight::A ? 1.0 : 0.0;
  const QuadResult q =
      comoving_inner(cA, 1.0 - cA, omega, beta, lorentz_gamma(beta), theta, w2, cfg);
  return scaled(q, 1.0);
}

ForceResult force_comoving(const KinematicState& state, const ParticleSpec& particle,
                           const BathSpec& bath, const QuadratureConfig& cfg,
                           const PhysicalConstants& pc) {
  cfg.validate();
  const PolarizabilityModel& model = particle.model();
  require_smooth(model, "force_comoving");
  const double beta = state.beta();
  if (beta == 0.0) return {0.0, 0.0, true, 0.0};

  const double gamma = state.gamma();
  const double Omega = state.Omega();
  const double theta = state.theta();
  const double w2 = bath.thermal_frequency(pc);
  const QuadratureConfig inner = inner_config(cfg);

  // omega^4 { 2 alpha''(w) K_A(w) + [alpha''(w + Omega) + alpha''(w - Omega)] K_B(w) }
  const auto integrand = [&](double omega) {
    if (omega == 0.0) return 0.0;
    const double cA = 2.0 * model.alpha_imag(omega);
    const double cB = Omega == 0.0 ? cA
                                   : model.alpha_imag(omega + Omega) + model.alpha_imag(omega - Omega);
    const double w2sq = omega * omega;
    return w2sq * w2sq * comoving_inner(cA, cB, omega, beta, gamma, theta, w2, inner).value;
  };

  const double rate = gamma * (1.0 - beta) / w2;
  const QuadResult q = integrate_semi_infinite(
      integrand, rate, outer_config(cfg, comoving_breakpoints(model, Omega)));
  return scaled(q, pc.hbar() / (4.0 * pi * std::pow(pc.c(), 4)));
}

ForceResult force_lab(const KinematicState& state, const ParticleSpec& particle,
                      const BathSpec& bath, const QuadratureConfig& cfg,
                      const PhysicalConstants& pc) {
  cfg.validate();
  require_smooth(particle.model(), "force_lab");
  const LabSetup s = make_lab_setup(state, particle, bath, pc);
  const ForceResult r = lab_integral(s, LabMoment::force, cfg);
  ForceResult out = r;
  const double pref = -pc.hbar() * s.gamma / (4.0 * pi * std::pow(pc.c(), 4));
  out.value *= pref;
  out.error *= std::abs(pref);
  out.magnitude *= std::abs(pref);
  return out;
}

ForceResult heating_rate_lab(const KinematicState& state, const ParticleSpec& particle,
                             const BathSpec& bath, const QuadratureConfig& cfg,
                             const PhysicalConstants& pc) {
  cfg.validate();
  require_smooth(particle.model(), "heating_rate_lab");
  const LabSetup s = make_lab_setup(state, particle, bath, pc);
  ForceResult out = lab_integral(s, LabMoment::heating, cfg);
  const double pref = pc.hbar() * s.gamma / (4.0 * pi * std::pow(pc.c(), 3));
  out.value *= pref;
  out.error *= pref;
  out.magnitude *= pref;
  return out;
}

ForceResult combine_lab_frame(double beta, const ForceResult& F_x, const ForceResult& Q_dot,
                              const PhysicalConstants& pc) {
  const double k = beta / std::fma(-beta, beta, 1.0) / pc.c();
  return {F_x.value - k * Q_dot.value, F_x.error + k * Q_dot.error,
          F_x.converged && Q_dot.converged, F_x.magnitude + k * Q_dot.magnitude};
}

ForceResult force_comoving_from_lab(const KinematicState& state, const ParticleSpec& particle,
                                    const BathSpec& bath, const QuadratureConfig& cfg,
                                    const PhysicalConstants& pc) {
  const ForceResult F_x = force_lab(state, particle, bath, cfg, pc);
  const ForceResult Q_dot = heating_rate_lab(state, particle, bath, cfg, pc);
  return combine_lab_frame(state.beta(), F_x, Q_dot, pc);
}

ForceResult force_nonrel(double V, double Omega, double theta, const PolarizabilityModel& model,
                         double T2_K, const QuadratureConfig& cfg, const PhysicalConstants& pc) {
  cfg.validate();
  require_smooth(model, "force_nonrel");
  if (!(V >= 0.0)) throw InvalidParameter("force_nonrel: V must be >= 0");
  if (!(Omega >= 0.0)) throw InvalidParameter("force_nonrel: Omega must be >= 0");
  const double w2 = pc.thermal_frequency(T2_K);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);

  const auto integrand = [&](double omega) {
    const double rotating = Omega == 0.0
                                ? 2.0 * model.alpha_imag(omega)
                                : model.alpha_imag(omega + Omega) + model.alpha_imag(omega - Omega);
    return thermal::omega5_over_sinh2(omega, w2) *
           (2.0 * (1.0 + s2) * model.alpha_imag(omega) + (3.0 + c2) * rotating);
  };
  const QuadResult q = integrate_semi_infinite(
      integrand, 1.0 / w2, outer_config(cfg, comoving_breakpoints(model, Omega)));
  return scaled(q, -pc.hbar() * V / (30.0 * pi * std::pow(pc.c(), 5) * w2));
}

ForceResult force_mkrtchian(double V, const PolarizabilityModel& model, double T2_K,
                            const QuadratureConfig& cfg, const PhysicalConstants& pc) {
  cfg.validate();
  require_smooth(model, "force_mkrtchian");
  if (!(V >= 0.0)) throw InvalidParameter("force_mkrtchian: V must be >= 0");
  const double w2 = pc.thermal_frequency(T2_K);
  const auto integrand = [&](double omega) {
    return thermal::omega5_over_sinh2(omega, w2) * model.alpha_imag(omega);
  };
  const QuadResult q = integrate_semi_infinite(integrand, 1.0 / w2,
                                               outer_config(cfg, {model.omega0()}));
  return scaled(q, -pc.hbar() * V / (3.0 * pi * std::pow(pc.c(), 5) * w2));
}

double force_unit(double V, const PolarizabilityModel& model, const PhysicalConstants& pc) {
  return pc.hbar() * V * model.alpha0() * std::pow(model.omega0(), 5) / (3.0 * std::pow(pc.c(), 5));
}

ForceBreakdown evaluate_forces(const KinematicState& state, const ParticleSpec& particle,
                               const BathSpec& bath, const QuadratureConfig& cfg,
                               const PhysicalConstants& pc) {
  ForceBreakdown out;
  out.F_x = force_lab(state, particle, bath, cfg, pc);
  out.Q_dot = heating_rate_lab(state, particle, bath, cfg, pc);
  out.F_prime_lab = combine_lab_frame(state.beta(), out.F_x, out.Q_dot, pc);
  out.F_prime_direct = force_comoving(state, particle, bath, cfg, pc);
  const double V = state.beta() * pc.c();
  if (V > 0.0) {
    out.normalized = out.F_prime_direct.value / force_unit(V, particle.model(), pc);
  }
  return out;
}

}  // namespace bbfric
