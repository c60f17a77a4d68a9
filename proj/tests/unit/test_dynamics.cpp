#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bbfric/dynamics.hpp"
#include "bbfric/errors.hpp"
#include "bbfric/thermal.hpp"
#include "../support/oracles.hpp"

using namespace bbfric;

namespace {

constexpr double kT2 = 300.0;
const double kW2 = kCodata.thermal_frequency(kT2);

QuadratureConfig qtol(double r) {
  QuadratureConfig c;
  c.rel_tol = r;
  return c;
}

// Linear drag coefficient of a sharp line: hbar alpha0 omega0^5 chi / (3 c^5 sinh^2 chi).
double kappa(double alpha0, double omega0, double chi) {
  const double c = kCodata.c();
  return kCodata.hbar() * alpha0 * std::pow(omega0, 5) * chi /
         (3.0 * std::pow(c, 5) * std::pow(std::sinh(chi), 2));
}

}  // namespace

TEST_CASE("solver configuration") {
  SolverConfig s;
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
  s = SolverConfig{};
  s.abs_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
  s = SolverConfig{};
  s.max_steps = 0;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
}

TEST_CASE("right-hand side") {
  const auto m = make_lorentz_model(1e-24, 2 * kW2, 0.1 * 2 * kW2);
  const ParticleSpec p(1e-15, 1e-8, kT2, m);
  const BathSpec bath(kT2);
  CHECK(deceleration_rhs(0.0, p, bath, 0.3 * m.omega0(), 0.5, qtol(1e-8)) == 0.0);
  CHECK(deceleration_rhs(0.2, p, bath, 0.0, 0.5, qtol(1e-8)) < 0.0);
  const double f = force_comoving(KinematicState(0.6, 0.0, 0.0), p, bath, qtol(1e-10)).value;
  CHECK(deceleration_rhs(0.6, p, bath, 0.0, 0.0, qtol(1e-10)) ==
        doctest::Approx(std::pow(1 - 0.36, 1.5) * f / (p.mass() * kCodata.c())).epsilon(1e-14));

  QuadratureConfig starved = qtol(1e-14);
  starved.max_subdivisions = 1;
  CHECK_THROWS_AS(deceleration_rhs(0.6, p, bath, 0.0, 0.0, starved), NumericalFailure);
}

TEST_CASE("rest is a fixed point") {
  const auto m = make_lorentz_model(1e-24, 2 * kW2, 0.2 * kW2);
  const ParticleSpec p(1e-15, 1e-8, 2 * kT2, m);
  SolverConfig s;
  s.sample_interval = 1.0;
  const auto tr = evolve(KinematicState(0.0, 0.3 * m.omega0(), 0.2), p, BathSpec(kT2), 0.0, 10.0, s,
                         qtol(1e-8));
  REQUIRE(tr.ok());
  CHECK(tr.samples.size() == 11);
  for (const auto& x : tr.samples) CHECK(x.beta == 0.0);
}

TEST_CASE("small velocity decays exponentially with the linear drag time") {
  const double chi = 2.5;
  const double w0 = 2.0 * chi * kW2;
  const double alpha0 = 1e-24;
  const auto m = make_lorentz_model(alpha0, w0, 1e-4 * w0);
  const double mass = 1e-26;
  const double tau = mass / kappa(alpha0, w0, chi);
  const ParticleSpec p(mass, 1e-9, kT2, m);
  SolverConfig s;
  s.rel_tol = 1e-9;
  s.abs_tol = 1e-14;
  s.sample_interval = tau / 4;
  s.record_heating = false;
  const double beta0 = 0.01;
  const auto tr = evolve(KinematicState(beta0, 0.0, 0.0), p, BathSpec(kT2), 0.0, 3.0 * tau, s,
                         qtol(1e-9));
  REQUIRE(tr.ok());
  REQUIRE(tr.samples.size() == 13);
  for (const auto& x : tr.samples) {
    const double expected = beta0 * std::exp(-x.t / tau);
    CAPTURE(x.t / tau);
    CHECK(std::abs(x.beta - expected) / expected < 0.01);
  }
  CHECK(tr.samples.back().t == 3.0 * tau);
}

TEST_CASE("relativistic start decelerates monotonically and stays in [0, 1)") {
  const auto m = make_lorentz_model(1e-24, 2 * kW2, 0.2 * kW2);
  const ParticleSpec p(1e-25, 1e-9, kT2, m);
  const BathSpec bath(kT2);
  const double rate = -deceleration_rhs(0.9, p, bath, 0.0, 0.0, qtol(1e-8)) / 0.9;
  SolverConfig s;
  s.rel_tol = 1e-7;
  s.record_heating = false;
  const auto tr = evolve(KinematicState(0.9, 0.0, 0.0), p, bath, 0.0, 20.0 / rate, s, qtol(1e-8));
  REQUIRE(tr.ok());
  REQUIRE(tr.samples.size() > 3);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    REQUIRE(tr.samples[i].t > tr.samples[i - 1].t);
    REQUIRE(tr.samples[i].beta < tr.samples[i - 1].beta);
    REQUIRE(tr.samples[i].beta >= 0.0);
    REQUIRE(lorentz_gamma(tr.samples[i].beta) <= lorentz_gamma(tr.samples[i - 1].beta));
  }
  CHECK(tr.samples.front().beta == 0.9);
  CHECK(tr.samples.back().beta < 0.5);
}

TEST_CASE("halving tolerances moves the endpoint by less than the coarse error") {
  const auto m = make_lorentz_model(1e-24, 2 * kW2, 0.2 * kW2);
  const ParticleSpec p(1e-25, 1e-9, kT2, m);
  const BathSpec bath(kT2);
  const KinematicState s0(0.5, 0.2 * m.omega0(), 0.3);
  const double rate = -deceleration_rhs(0.5, p, bath, s0.Omega(), s0.theta(), qtol(1e-8)) / 0.5;
  const double t1 = 3.0 / rate;
  SolverConfig coarse;
  coarse.rel_tol = 1e-6;
  coarse.abs_tol = 1e-9;
  coarse.record_heating = false;
  SolverConfig fine = coarse;
  fine.rel_tol /= 2;
  fine.abs_tol /= 2;
  const auto q = qtol(1e-11);
  const auto a = evolve(s0, p, bath, 0.0, t1, coarse, q);
  const auto b = evolve(s0, p, bath, 0.0, t1, fine, q);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  const double ba = a.samples.back().beta;
  const double bb = b.samples.back().beta;
  const double coarse_err = coarse.abs_tol + coarse.rel_tol * std::abs(ba);
  CHECK(std::abs(ba - bb) < coarse_err);
}

TEST_CASE("identical runs are bit-identical") {
  const auto m = make_lorentz_model(1e-24, 2 * kW2, 0.2 * kW2);
  const ParticleSpec p(1e-25, 1e-9, 0.5 * kT2, m);
  const BathSpec bath(kT2);
  const KinematicState s0(0.7, 0.4 * m.omega0(), 1.0);
  const double rate = -deceleration_rhs(0.7, p, bath, s0.Omega(), s0.theta(), qtol(1e-8)) / 0.7;
  SolverConfig s;
  s.rel_tol = 1e-6;
  s.sample_interval = 0.5 / rate;
  const auto a = evolve(s0, p, bath, 0.0, 2.0 / rate, s, qtol(1e-8));
  const auto b = evolve(s0, p, bath, 0.0, 2.0 / rate, s, qtol(1e-8));
  REQUIRE(a.ok());
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].t == b.samples[i].t);
    CHECK(a.samples[i].beta == b.samples[i].beta);
    CHECK(a.samples[i].F_prime_x == b.samples[i].F_prime_x);
    CHECK(a.samples[i].Q_dot == b.samples[i].Q_dot);
  }
  CHECK(a.steps == b.steps);
  CHECK(a.samples.size() == 5);
  CHECK(std::isfinite(a.samples[2].Q_dot));
}

TEST_CASE("failures end the run with a partial trajectory") {
  const auto m = make_lorentz_model(1e-24, 2 * kW2, 0.2 * kW2);
  const ParticleSpec p(1e-25, 1e-9, kT2, m);
  const BathSpec bath(kT2);
  SolverConfig s;
  s.max_steps = 2;
  s.record_heating = false;
  const double rate = -deceleration_rhs(0.5, p, bath, 0.0, 0.0, qtol(1e-8)) / 0.5;
  const auto tr = evolve(KinematicState(0.5, 0.0, 0.0), p, bath, 0.0, 100.0 / rate, s, qtol(1e-8));
  CHECK(tr.status == TrajectoryStatus::max_steps);
  CHECK_FALSE(tr.samples.empty());
  CHECK_FALSE(tr.message.empty());

  QuadratureConfig starved = qtol(1e-14);
  starved.max_subdivisions = 1;
  SolverConfig s2;
  s2.record_heating = false;
  const auto tr2 = evolve(KinematicState(0.5, 0.0, 0.0), p, bath, 0.0, 1.0 / rate, s2, starved);
  CHECK(tr2.status == TrajectoryStatus::rhs_failure);
  CHECK(std::string(to_string(tr2.status)).size() > 0);
  CHECK_THROWS_AS(evolve(KinematicState(0.5, 0.0, 0.0), p, bath, 1.0, 0.0, s2, qtol(1e-8)),
                  InvalidParameter);
}
