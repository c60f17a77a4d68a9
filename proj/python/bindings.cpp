#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "bbfric/dynamics.hpp"
#include "bbfric/errors.hpp"
#include "bbfric/forces.hpp"
#include "bbfric/resonance.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace bbfric;

namespace {

// The Python surface takes plain keyword arguments instead of the C++ value types.
struct Point {
  KinematicState state;
  ParticleSpec particle;
  BathSpec bath;
};

Point make_point(const PolarizabilityModel& model, double beta, double Omega, double theta,
                 double T1, double T2, double mass, double radius) {
  return {KinematicState(beta, Omega, theta), ParticleSpec(mass, radius, T1, model), BathSpec(T2)};
}

template <ForceResult (*Fn)(const KinematicState&, const ParticleSpec&, const BathSpec&,
                            const QuadratureConfig&, const PhysicalConstants&)>
ForceResult call_point(const PolarizabilityModel& model, double beta, double Omega, double theta,
                       double T1, double T2, const QuadratureConfig& cfg) {
  const Point p = make_point(model, beta, Omega, theta, T1, T2, 1.0, 1e-9);
  return Fn(p.state, p.particle, p.bath, cfg, kCodata);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
    Radiative friction, heating, and deceleration of a rotating polarizable particle
    moving through blackbody radiation. SI units throughout.
  )pbdoc";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<UnsupportedEvaluation>(m, "UnsupportedEvaluation", PyExc_TypeError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<PolarizabilityModel>(m, "PolarizabilityModel")
      .def_static("lorentz", &PolarizabilityModel::lorentz, py::arg("alpha0"), py::arg("omega0"),
                  py::arg("gamma_d"))
      .def_static("delta_resonance", &PolarizabilityModel::delta_resonance, py::arg("alpha0"),
                  py::arg("omega0"))
      .def_property_readonly("alpha0", &PolarizabilityModel::alpha0)
      .def_property_readonly("omega0", &PolarizabilityModel::omega0)
      .def_property_readonly("gamma_d", &PolarizabilityModel::gamma_d)
      .def_property_readonly("is_smooth", &PolarizabilityModel::is_smooth)
      .def("alpha_imag", &PolarizabilityModel::alpha_imag, py::arg("omega"))
      .def("slope_at_zero", &PolarizabilityModel::slope_at_zero);

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
      .def_readwrite("breakpoints", &QuadratureConfig::breakpoints);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &SolverConfig::rel_tol)
      .def_readwrite("abs_tol", &SolverConfig::abs_tol)
      .def_readwrite("initial_step", &SolverConfig::initial_step)
      .def_readwrite("max_steps", &SolverConfig::max_steps)
      .def_readwrite("sample_interval", &SolverConfig::sample_interval)
      .def_readwrite("record_heating", &SolverConfig::record_heating);

  py::class_<ForceResult>(m, "ForceResult")
      .def_readonly("value", &ForceResult::value)
      .def_readonly("error", &ForceResult::error)
      .def_readonly("converged", &ForceResult::converged)
      .def_readonly("magnitude", &ForceResult::magnitude)
      .def("__repr__", [](const ForceResult& r) {
        std::ostringstream os;
        os.precision(17);
        os << "ForceResult(value=" << r.value << ", error=" << r.error
           << ", converged=" << (r.converged ? "True" : "False") << ")";
        return os.str();
      });

  const auto point_args = [] {
    return std::make_tuple(py::arg("model"), py::arg("beta"), py::arg("Omega") = 0.0,
                           py::arg("theta") = 0.0, py::arg("T1"), py::arg("T2"),
                           py::arg("cfg") = QuadratureConfig{});
  };
  std::apply([&](auto... a) { m.def("force_comoving", &call_point<force_comoving>, a...); },
             point_args());
  std::apply([&](auto... a) { m.def("force_lab", &call_point<force_lab>, a...); }, point_args());
  std::apply([&](auto... a) { m.def("heating_rate_lab", &call_point<heating_rate_lab>, a...); },
             point_args());
  std::apply(
      [&](auto... a) { m.def("force_comoving_from_lab", &call_point<force_comoving_from_lab>, a...); },
      point_args());

  m.def(
      "force_nonrel",
      [](double V, double Omega, double theta, const PolarizabilityModel& model, double T2,
         const QuadratureConfig& cfg) { return force_nonrel(V, Omega, theta, model, T2, cfg); },
      py::arg("V"), py::arg("Omega"), py::arg("theta"), py::arg("model"), py::arg("T2"),
      py::arg("cfg") = QuadratureConfig{});
  m.def(
      "force_mkrtchian",
      [](double V, const PolarizabilityModel& model, double T2, const QuadratureConfig& cfg) {
        return force_mkrtchian(V, model, T2, cfg);
      },
      py::arg("V"), py::arg("model"), py::arg("T2"), py::arg("cfg") = QuadratureConfig{});
  m.def(
      "force_unit", [](double V, const PolarizabilityModel& model) { return force_unit(V, model); },
      py::arg("V"), py::arg("model"));
  m.def(
      "reduced_chi", [](double omega0, double T2) { return reduced_chi(omega0, T2); },
      py::arg("omega0"), py::arg("T2"));
  m.def(
      "validate_dipole_conditions",
      [](const PolarizabilityModel& model, double radius, double T1, double T2, double beta,
         double Omega, double theta) {
        const Point p = make_point(model, beta, Omega, theta, T1, T2, 1.0, radius);
        return validate_dipole_conditions(p.particle, p.bath, p.state);
      },
      py::arg("model"), py::arg("radius"), py::arg("T1"), py::arg("T2"), py::arg("beta") = 0.0,
      py::arg("Omega") = 0.0, py::arg("theta") = 0.0);

  m.def("rotation_correction_G", &rotation_correction_G, py::arg("chi"));
  m.def(
      "resonance_force_quadratic",
      [](double u, double chi, double theta) {
        return resonance_force_quadratic(ResonanceParams(u, chi, theta));
      },
      py::arg("u"), py::arg("chi"), py::arg("theta") = 0.0);
  m.def(
      "resonance_force_exact",
      [](double u, double chi, double theta) {
        return resonance_force_exact(ResonanceParams(u, chi, theta));
      },
      py::arg("u"), py::arg("chi"), py::arg("theta") = 0.0);
  m.def("acceleration_threshold", &acceleration_threshold, py::arg("chi"), py::arg("theta") = 0.0);
  m.def("acceleration_window", [] {
    const ChiWindow w = acceleration_window();
    return py::make_tuple(w.lo, w.hi);
  });
  m.def(
      "fig2_curves",
      [](const std::vector<double>& u_grid, const std::vector<double>& chis, double theta) {
        py::list rows;
        for (const Fig2Row& r : fig2_curves(u_grid, chis, theta)) {
          rows.append(py::make_tuple(r.chi, r.u, r.f_quadratic, r.f_exact));
        }
        return rows;
      },
      py::arg("u_grid"), py::arg("chis") = default_fig2_chis(), py::arg("theta") = 0.0);

  m.def(
      "evolve",
      [](const PolarizabilityModel& model, double beta0, double Omega, double theta, double T1,
         double T2, double mass, double radius, double t_end, const SolverConfig& solver,
         const QuadratureConfig& cfg) {
        const Point p = make_point(model, beta0, Omega, theta, T1, T2, mass, radius);
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = evolve(p.state, p.particle, p.bath, 0.0, t_end, solver, cfg);
        }
        py::list samples;
        for (const TrajectorySample& s : traj.samples) {
          samples.append(py::make_tuple(s.t, s.beta, s.F_prime_x, s.Q_dot));
        }
        py::dict out;
        out["samples"] = samples;
        out["status"] = to_string(traj.status);
        out["message"] = traj.message;
        out["steps"] = traj.steps;
        out["rejected_steps"] = traj.rejected_steps;
        return out;
      },
      py::arg("model"), py::arg("beta0"), py::arg("Omega"), py::arg("theta"), py::arg("T1"),
      py::arg("T2"), py::arg("mass"), py::arg("radius"), py::arg("t_end"),
      py::arg("solver") = SolverConfig{}, py::arg("cfg") = QuadratureConfig{});

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
