#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bbfric/errors.hpp"
#include "bbfric/forces.hpp"
#include "bbfric/resonance.hpp"
#include "../support/oracles.hpp"

using namespace bbfric;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kT2 = 300.0;
const double kW2 = kCodata.thermal_frequency(kT2);

QuadratureConfig tol(double r) {
  QuadratureConfig c;
  c.rel_tol = r;
  return c;
}

// omega0 chosen so that chi = hbar omega0 / 2 k_B T2
PolarizabilityModel lorentz_at_chi(double chi, double width = 0.1) {
  const double w0 = 2.0 * chi * kW2;
  return make_lorentz_model(1e-24, w0, width * w0);
}

ParticleSpec particle(const PolarizabilityModel& m, double T1 = kT2) {
  return {1e-15, 1e-8, T1, m};
}

}  // namespace

TEST_CASE("lab weights") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ub(0.0, 0.99), um(-1.0, 1.0), ut(0.0, kPi);
  for (int i = 0; i < 200; ++i) {
    const double b = ub(rng), m = um(rng), t = ut(rng);
    const auto w = weight_lab(b, m, t);
    const double sum = (1 - b * b) * (1 - m * m) + (1 + b * b) * (1 + m * m) + 4 * b * m;
    REQUIRE(w.first + w.second == doctest::Approx(sum).epsilon(1e-14));
  }
  const auto w = weight_lab(0.0, 0.3, 0.0);
  CHECK(w.first == doctest::Approx(1 - 0.09));
  CHECK(w.second == doctest::Approx(1 + 0.09));
  CHECK(weight_lab(0.0, -0.3, 1.0).first == weight_lab(0.0, 0.3, 1.0).first);
  CHECK(weight_lab(0.4, -0.3, 1.0).first != doctest::Approx(weight_lab(0.4, 0.3, 1.0).first));
}

TEST_CASE("co-moving weights and their moments") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> um(-1.0, 1.0), ut(0.0, kPi);
  for (int i = 0; i < 200; ++i) {
    const double m = um(rng), t = ut(rng);
    const auto w = weight_comoving(m, t);
    REQUIRE(w.first + w.second == doctest::Approx(2.0).epsilon(1e-15));
    REQUIRE(weight_comoving(-m, t).first == w.first);
    REQUIRE(weight_comoving(-m, t).second == w.second);
  }
  for (double t : {0.0, 0.4, kPi / 2, 2.5}) {
    const double s2 = std::pow(std::sin(t), 2), c2 = std::pow(std::cos(t), 2);
    const double mA = oracle::simpson_fixed(
        [t](double m) { return m * m * weight_comoving(m, t).first; }, -1.0, 1.0, 4000);
    const double mB = oracle::simpson_fixed(
        [t](double m) { return m * m * weight_comoving(m, t).second; }, -1.0, 1.0, 4000);
    CHECK(mA == doctest::Approx(4.0 / 15.0 * (1 + s2)).epsilon(1e-10));
    CHECK(mB == doctest::Approx(4.0 / 15.0 * (3 + c2)).epsilon(1e-10));
  }
}

TEST_CASE("kernel K: zero at rest, negative, odd, decaying") {
  const auto cfg = tol(1e-10);
  CHECK(kernel_K(ComovingWeight::A, kW2, 0.0, 0.3, kT2, cfg).value == 0.0);
  CHECK(kernel_K(ComovingWeight::B, kW2, 0.0, 0.3, kT2, cfg).value == 0.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ub(0.01, 0.95), ut(0.0, kPi), lw(-2.0, 1.5);
  for (int i = 0; i < 60; ++i) {
    const double b = ub(rng), t = ut(rng), w = std::pow(10.0, lw(rng)) * kW2;
    for (auto X : {ComovingWeight::A, ComovingWeight::B}) {
      const auto k = kernel_K(X, w, b, t, kT2, cfg);
      REQUIRE(k.converged);
      REQUIRE(k.value < 0.0);
      // at negative omega the Bose factor carries a -1 whose mu-integral vanishes only
      // to quadrature accuracy, so compare against the combined error
      QuadratureConfig diag = cfg;
      diag.l1_tol = 1e-12;
      const auto km = kernel_K(X, -w, b, t, kT2, diag);
      REQUIRE(km.converged);
      REQUIRE(std::abs(km.value + k.value) <= 1e-8 * std::abs(k.value) + k.error + km.error);
    }
  }

  // Independent check of the definition with plain Simpson.
  const double b = 0.4, t = 0.7, w = 1.3 * kW2, g = 1.0 / std::sqrt(1 - b * b);
  const double ref = 2.0 * oracle::simpson(
                               [&](double m) {
                                 return m * weight_comoving(m, t).first /
                                        std::expm1(g * w * (1 + b * m) / kW2);
                               },
                               -1.0, 1.0, 1e-14);
  CHECK(oracle::rel_diff(kernel_K(ComovingWeight::A, w, b, t, kT2, cfg).value, ref) < 1e-9);

  // exp(-gamma (1 - beta) omega / w2) envelope
  const double k1 = std::abs(kernel_K(ComovingWeight::B, 40 * kW2, b, t, kT2, cfg).value);
  const double k2 = std::abs(kernel_K(ComovingWeight::B, 50 * kW2, b, t, kT2, cfg).value);
  CHECK(k2 < k1 * std::exp(-10.0 * g * (1 - b)) * 1.5);
  CHECK_THROWS_AS(kernel_K(ComovingWeight::A, 0.0, b, t, kT2, cfg), InvalidParameter);
}

TEST_CASE("co-moving force: rest, friction sign, theta collapse at Omega = 0") {
  const auto m = lorentz_at_chi(1.0);
  const BathSpec bath(kT2);
  const auto cfg = tol(1e-10);
  for (double Om : {0.0, 0.5}) {
    CHECK(force_comoving(KinematicState(0.0, Om * m.omega0(), 1.0), particle(m), bath, cfg).value ==
          0.0);
  }
  const auto f0 = force_comoving(KinematicState(0.3, 0.0, 0.0), particle(m), bath, cfg);
  const auto f90 = force_comoving(KinematicState(0.3, 0.0, kPi / 2), particle(m), bath, cfg);
  CHECK(f0.converged);
  CHECK(f0.value < 0.0);
  CHECK(oracle::rel_diff(f0.value, f90.value) < 1e-10);

  // Rough size check against the leading-order formula.
  const auto nr = force_nonrel(0.3 * kCodata.c(), 0.0, 0.0, m, kT2, cfg);
  CHECK(f0.value / nr.value == doctest::Approx(1.0).epsilon(0.5));

  const auto d = PolarizabilityModel::delta_resonance(1e-24, m.omega0());
  CHECK_THROWS_AS(force_comoving(KinematicState(0.3, 0.0, 0.0), particle(d), bath, cfg),
                  UnsupportedEvaluation);
  CHECK_THROWS_AS(force_lab(KinematicState(0.3, 0.0, 0.0), particle(d), bath, cfg),
                  UnsupportedEvaluation);
}

TEST_CASE("friction sign over random smooth models") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uc(0.3, 4.0), uw(-2.5, 0.0), ub(0.02, 0.95),
      ut(0.0, kPi);
  const BathSpec bath(kT2);
  for (int i = 0; i < 12; ++i) {
    const auto m = lorentz_at_chi(uc(rng), std::pow(10.0, uw(rng)));
    const KinematicState s(ub(rng), 0.0, ut(rng));
    const auto f = force_comoving(s, particle(m), bath, tol(1e-8));
    CAPTURE(s.beta());
    REQUIRE(f.converged);
    CHECK(f.value < 0.0);
  }
}

TEST_CASE("lab frame: rest, drag sign, heating sign") {
  const auto m = lorentz_at_chi(1.0);
  const BathSpec bath(kT2);
  const auto cfg = tol(1e-9);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uo(0.0, 1.0), ut(0.0, kPi), uT(0.2, 5.0);
  for (int i = 0; i < 6; ++i) {
    const KinematicState s(0.0, uo(rng) * m.omega0(), ut(rng));
    const auto p = particle(m, uT(rng) * kT2);
    const auto Fx = force_lab(s, p, bath, cfg);
    const auto Q = heating_rate_lab(s, p, bath, cfg);
    CAPTURE(s.Omega());
    CHECK(std::abs(Fx.value) <= std::max(Fx.error, 1e-12 * Q.magnitude / kCodata.c()));
  }

  const auto Fx = force_lab(KinematicState(0.2, 0.0, 1.1), particle(m), bath, cfg);
  CHECK(Fx.converged);
  CHECK(Fx.value < 0.0);

  const KinematicState rest(0.0, 0.0, 0.4);
  CHECK(std::abs(heating_rate_lab(rest, particle(m), bath, cfg).value) <= 1e-30);
  for (int i = 0; i < 6; ++i) {
    const double T1 = uT(rng) * kT2;
    const auto Q = heating_rate_lab(rest, particle(m, T1), bath, cfg);
    CAPTURE(T1);
    CHECK(Q.converged);
    CHECK((Q.value > 0.0) == (kT2 > T1));
  }
}

TEST_CASE("lab integrand has a finite limit at omega = 0") {
  const auto m = lorentz_at_chi(1.0);
  const double w1 = 1.7 * kW2;
  for (double beta : {0.0, 0.3, 0.8}) {
    for (double mu : {-0.9, 0.0, 0.5}) {
      const double g = 1.0 / std::sqrt(1 - beta * beta);
      const double expected = 2.0 * m.slope_at_zero() * (g * (1 + beta * mu) * kW2 - w1);
      const auto at0 = detail::lab_braces_reduced(m, 0.0, mu, beta, g, 0.0, w1, kW2);
      CHECK(at0.first == doctest::Approx(expected).epsilon(1e-12));
      const auto near = detail::lab_braces_reduced(m, 1e-6 * kW2, mu, beta, g, 0.0, w1, kW2);
      CHECK(near.first == doctest::Approx(expected).epsilon(1e-6));
      const auto full = detail::lab_braces(m, 1e-3 * kW2, mu, beta, g, 0.0, w1, kW2);
      CHECK(std::isfinite(full.first));
      CHECK(std::isfinite(full.second));
    }
  }
}

TEST_CASE("frame identity at the documented point") {
  const auto m = lorentz_at_chi(1.0);
  const BathSpec bath(kT2);
  const KinematicState s(0.5, 0.4 * m.omega0(), kPi / 3);
  const auto cfg = tol(1e-10);
  const auto p = particle(m, 3.0 * kT2);
  const auto direct = force_comoving(s, p, bath, cfg);
  const auto combo = force_comoving_from_lab(s, p, bath, cfg);
  CHECK(direct.converged);
  CHECK(combo.converged);
  CHECK(oracle::rel_diff(direct.value, combo.value) < 1e-6);

  const auto fb = evaluate_forces(s, p, bath, cfg);
  CHECK(fb.converged());
  CHECK(fb.F_prime_direct.value == direct.value);
  CHECK(fb.normalized.has_value());
  CHECK(*fb.normalized == doctest::Approx(direct.value / force_unit(0.5 * kCodata.c(), m)));

  CHECK(force_comoving_from_lab(s.with_beta(0.0), p, bath, cfg).value == 0.0);
  CHECK_FALSE(evaluate_forces(s.with_beta(0.0), p, bath, cfg).normalized.has_value());
}

TEST_CASE("combine_lab_frame arithmetic") {
  const ForceResult Fx{-2.0, 0.1, true, 3.0};
  const ForceResult Q{5.0, 0.2, true, 6.0};
  const double b = 0.6;
  const auto r = combine_lab_frame(b, Fx, Q);
  const double k = b / (1 - b * b) / kCodata.c();
  CHECK(r.value == doctest::Approx(-2.0 - k * 5.0).epsilon(1e-15));
  CHECK(r.error == doctest::Approx(0.1 + k * 0.2).epsilon(1e-15));
  CHECK(r.converged);
}

TEST_CASE("co-moving force does not depend on T1") {
  const auto m = lorentz_at_chi(1.5);
  const BathSpec bath(kT2);
  const KinematicState s(0.3, 0.3 * m.omega0(), 0.5);
  const auto cfg = tol(1e-10);
  const double ref = force_comoving_from_lab(s, particle(m, kT2), bath, cfg).value;
  for (double T1 : {kT2 / 3, 0.6 * kT2, 2.0 * kT2, 3.0 * kT2}) {
    const double v = force_comoving_from_lab(s, particle(m, T1), bath, cfg).value;
    CAPTURE(T1);
    CHECK(oracle::rel_diff(v, ref) < 1e-6);
  }
}

TEST_CASE("theta invariance of all co-moving evaluators at Omega = 0") {
  const auto m = lorentz_at_chi(1.2);
  const BathSpec bath(kT2);
  const auto cfg = tol(1e-11);
  const double beta = 0.2;
  const double V = beta * kCodata.c();
  const double d0 = force_comoving(KinematicState(beta, 0.0, 0.0), particle(m), bath, cfg).value;
  const double l0 =
      force_comoving_from_lab(KinematicState(beta, 0.0, 0.0), particle(m), bath, cfg).value;
  const double n0 = force_nonrel(V, 0.0, 0.0, m, kT2, cfg).value;
  for (double t : {kPi / 6, kPi / 3, kPi / 2, 2.0}) {
    CAPTURE(t);
    CHECK(oracle::rel_diff(force_comoving(KinematicState(beta, 0.0, t), particle(m), bath, cfg).value,
                           d0) < 1e-8);
    CHECK(oracle::rel_diff(
              force_comoving_from_lab(KinematicState(beta, 0.0, t), particle(m), bath, cfg).value,
              l0) < 1e-8);
    CHECK(oracle::rel_diff(force_nonrel(V, 0.0, t, m, kT2, cfg).value, n0) < 1e-8);
  }
}

TEST_CASE("relativistic correction to the co-moving force is second order") {
  const auto m = lorentz_at_chi(1.0);
  const BathSpec bath(kT2);
  const auto cfg = tol(1e-12);
  const double Om = 0.3 * m.omega0(), t = kPi / 4;
  const auto gap = [&](double beta) {
    const double f = force_comoving(KinematicState(beta, Om, t), particle(m), bath, cfg).value;
    const double n = force_nonrel(beta * kCodata.c(), Om, t, m, kT2, cfg).value;
    return std::abs(f / n - 1.0);
  };
  const double ratio = gap(0.02) / gap(0.01);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("nonrelativistic limit and the isotropic formula") {
  const auto m = lorentz_at_chi(2.0, 0.05);
  const auto cfg = tol(1e-10);
  CHECK(force_nonrel(0.0, 0.2 * m.omega0(), 0.3, m, kT2, cfg).value == 0.0);
  const double V = 1e5;
  for (double t : {0.0, 1.0}) {
    const auto a = force_nonrel(V, 0.0, t, m, kT2, cfg);
    const auto b = force_mkrtchian(V, m, kT2, cfg);
    CHECK(oracle::rel_diff(a.value, b.value) < 1e-9);
  }
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> uc(0.3, 4.0), uw(-3.0, 0.0);
  for (int i = 0; i < 10; ++i) {
    const auto mm = lorentz_at_chi(uc(rng), std::pow(10.0, uw(rng)));
    CHECK(force_mkrtchian(V, mm, kT2, cfg).value <= 0.0);
  }
  CHECK_THROWS_AS(force_nonrel(-1.0, 0.0, 0.0, m, kT2, cfg), InvalidParameter);
}

TEST_CASE("isotropic formula in the delta limit") {
  const double chi = 2.5;
  const double V = 3e4;
  const auto cfg = tol(1e-10);
  const double expected = -chi / std::pow(std::sinh(chi), 2);
  CHECK(expected == doctest::Approx(-0.068297).epsilon(1e-5));
  double prev_gap = INFINITY;
  for (double w : {1e-2, 1e-3, 1e-4}) {
    const auto m = lorentz_at_chi(chi, w);
    const auto f = force_mkrtchian(V, m, kT2, cfg);
    CHECK(f.converged);
    const double gap = oracle::rel_diff(f.value / force_unit(V, m), expected);
    CAPTURE(w);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("narrow line converges to the closed-form resonance force") {
  const double chi = 2.5;
  const double V = 3e4;
  const auto cfg = tol(1e-10);
  const double u = 0.5;
  const double exact = resonance_force_exact(ResonanceParams(u, chi, 0.0));
  const auto gap = [&](double width) {
    const auto m = lorentz_at_chi(chi, width);
    const auto f = force_nonrel(V, u * m.omega0(), 0.0, m, kT2, cfg);
    REQUIRE(f.converged);
    return oracle::rel_diff(f.value / force_unit(V, m), exact);
  };
  CHECK(gap(1e-2) < 0.05);
  CHECK(gap(1e-3) < 0.01);

  // same at other rotation rates and angles
  for (double uu : {0.2, 0.9, 1.3}) {
    const auto m = lorentz_at_chi(1.8, 1e-3);
    const auto f = force_nonrel(V, uu * m.omega0(), 1.0, m, kT2, cfg);
    CAPTURE(uu);
    CHECK(oracle::rel_diff(f.value / force_unit(V, m),
                           resonance_force_exact(ResonanceParams(uu, 1.8, 1.0))) < 0.01);
  }
}
