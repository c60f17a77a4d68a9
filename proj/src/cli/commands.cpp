#include "bbfric/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bbfric/errors.hpp"
#include "bbfric/forces.hpp"
#include "bbfric/resonance.hpp"

namespace bbfric::cli {

namespace {

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void header(const std::vector<std::string>& names) { write_fields(names); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) fields.push_back(format_double(v, precision_));
    write_fields(fields);
  }

  void row(const std::vector<std::string>& fields) { write_fields(fields); }

  std::string number(double v) const { return format_double(v, precision_); }

 private:
  void write_fields(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << fields[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
  int precision_;
};

void provenance(CsvWriter& csv, const std::string& command, const std::string& fingerprint) {
  csv.comment(std::string("bbfric ") + kVersion + " " + command);
  csv.comment("config_hash fnv1a64=" + fnv1a_hex(fingerprint));
}

void report_warnings(CsvWriter& csv, std::ostream& diag, const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) {
    csv.comment("warning: " + w);
    diag << "warning: " << w << "\n";
  }
}

ParticleSpec smooth_particle(const RunConfig& config, const char* command) {
  ParticleSpec p = config.particle();
  if (!p.model().is_smooth()) {
    throw ConfigError(std::string(command) +
                      " needs a pointwise polarizability (model = lorentz); use threshold/fig2 "
                      "for the delta resonance");
  }
  return p;
}

// One grid point of a sweep.
struct PointInputs {
  double beta, Omega, theta, T1, T2;
};

struct PointResult {
  double value = std::nan("");
  double error = std::nan("");
  bool failed = true;
};

PointResult evaluate_point(const PointInputs& in, const std::string& quantity,
                           const ParticleSpec& base, const QuadratureConfig& q,
                           const PhysicalConstants& pc) {
  PointResult r;
  try {
    const KinematicState s(in.beta, in.Omega, in.theta);
    const ParticleSpec p = base.with_T1(in.T1);
    const BathSpec bath(in.T2);
    ForceResult f;
    if (quantity == "F_x") {
      f = force_lab(s, p, bath, q, pc);
    } else if (quantity == "Q_dot") {
      f = heating_rate_lab(s, p, bath, q, pc);
    } else if (quantity == "f_normalized" && in.beta == 0.0) {
      // F' / F0 is 0/0 at rest; its limit is the slow-motion force per unit speed
      const double unit = force_unit(1.0, p.model(), pc);
      f = force_nonrel(1.0, in.Omega, in.theta, p.model(), in.T2, q, pc);
      f.value /= unit;
      f.error /= unit;
    } else {
      f = force_comoving(s, p, bath, q, pc);
      if (quantity == "f_normalized") {
        const double unit = force_unit(in.beta * pc.c(), p.model(), pc);
        f.value /= unit;
        f.error /= unit;
      }
    }
    r.value = f.value;
    r.error = f.error;
    r.failed = !f.converged || !std::isfinite(f.value);
  } catch (const std::exception&) {
    r.failed = true;
  }
  return r;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number list '" + text + "'");
    }
  }
  if (v.empty()) throw ConfigError("empty number list");
  return v;
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

int cmd_force(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  const PhysicalConstants& pc = config.physical_constants();
  const ParticleSpec particle = smooth_particle(config, "force");
  const BathSpec bath = config.bath();
  const KinematicState state = config.state();

  CsvWriter csv(out, config.output.precision);
  provenance(csv, "force", serialize_config(config));
  report_warnings(csv, diag, validate_dipole_conditions(particle, bath, state, pc));

  const ForceBreakdown fb = evaluate_forces(state, particle, bath, config.quadrature, pc);
  csv.header({"beta", "omega", "theta", "T1", "T2", "F_x", "Q_dot", "F_prime_lab_combo",
              "F_prime_direct", "err_est"});
  csv.row(std::vector<double>{state.beta(), state.Omega(), state.theta(), particle.T1(), bath.T2(),
                              fb.F_x.value, fb.Q_dot.value, fb.F_prime_lab.value,
                              fb.F_prime_direct.value,
                              fb.F_prime_lab.error + fb.F_prime_direct.error});
  if (!fb.converged()) {
    csv.comment("unconverged: quadrature did not meet its tolerance");
    diag << "error: quadrature did not converge\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_threshold(std::span<const double> chis, double theta, const OutputSection& output,
                  std::ostream& out) {
  for (double chi : chis) {
    if (!(chi > 0.0)) throw ConfigError("threshold: chi must be > 0");
  }
  CsvWriter csv(out, output.precision);
  std::ostringstream fp;
  fp << "threshold theta=" << format_double(theta);
  for (double chi : chis) fp << " chi=" << format_double(chi);
  provenance(csv, "threshold", fp.str());

  const ChiWindow window = acceleration_window();
  csv.comment("acceleration_window chi_lo=" + csv.number(window.lo) +
              " chi_hi=" + csv.number(window.hi));
  csv.header({"chi", "theta", "u_star"});
  for (double chi : chis) {
    const auto u = acceleration_threshold(chi, theta);
    csv.row(std::vector<std::string>{csv.number(chi), csv.number(theta), u ? csv.number(*u) : ""});
  }
  return kExitOk;
}

int cmd_fig2(double u_max, std::size_t n_points, std::span<const double> chis,
             const OutputSection& output, std::ostream& out) {
  if (n_points < 2) throw ConfigError("fig2: n_points must be >= 2");
  if (!(u_max > 0.0)) throw ConfigError("fig2: u_max must be > 0");
  for (double chi : chis) {
    if (!(chi > 0.0)) throw ConfigError("fig2: chi must be > 0");
  }
  std::vector<double> u_grid(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    u_grid[i] = u_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
  }
  u_grid.back() = u_max;

  CsvWriter csv(out, output.precision);
  std::ostringstream fp;
  fp << "fig2 u_max=" << format_double(u_max) << " n=" << n_points;
  for (double chi : chis) fp << " chi=" << format_double(chi);
  provenance(csv, "fig2", fp.str());
  csv.comment("theta=0; force normalized to hbar V alpha0 omega0^5 / (3 c^5)");
  csv.header({"chi", "u", "f_quadratic", "f_exact"});
  for (const Fig2Row& r : fig2_curves(u_grid, chis, 0.0)) {
    csv.row(std::vector<double>{r.chi, r.u, r.f_quadratic, r.f_exact});
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const SweepSpec& sweep, unsigned threads, std::ostream& out,
              std::ostream& diag) {
  if (sweep.axes.empty()) throw ConfigError("sweep: at least one axis is required");
  const auto& quantities = sweep_quantities();
  if (std::find(quantities.begin(), quantities.end(), sweep.quantity) == quantities.end()) {
    throw ConfigError("sweep: unknown quantity '" + sweep.quantity + "'");
  }
  const PhysicalConstants& pc = config.physical_constants();
  const ParticleSpec base = smooth_particle(config, "sweep");
  const BathSpec bath = config.bath();
  const double omega0 = base.model().omega0();

  const auto has_axis = [&](const char* name) {
    return std::any_of(sweep.axes.begin(), sweep.axes.end(),
                       [&](const SweepAxis& a) { return a.name == name; });
  };
  for (std::size_t i = 0; i < sweep.axes.size(); ++i) {
    for (std::size_t j = i + 1; j < sweep.axes.size(); ++j) {
      if (sweep.axes[i].name == sweep.axes[j].name) {
        throw ConfigError("sweep: axis '" + sweep.axes[i].name + "' given twice");
      }
    }
  }
  if (has_axis("T2") && has_axis("chi")) throw ConfigError("sweep: T2 and chi both set the bath temperature");
  if (has_axis("omega") && has_axis("u")) throw ConfigError("sweep: omega and u both set the rotation rate");

  // Grid in row-major order, first axis slowest.
  std::vector<std::vector<double>> axis_values;
  std::size_t n_points = 1;
  for (const SweepAxis& a : sweep.axes) {
    axis_values.push_back(a.values());
    n_points *= a.count;
  }

  const PointInputs base_point{config.beta.value_or(std::nan("")), config.omega_rad_s,
                               config.theta_rad, base.T1(), bath.T2()};
  std::vector<PointInputs> points(n_points, base_point);
  std::vector<std::vector<double>> echoes(n_points);
  for (std::size_t idx = 0; idx < n_points; ++idx) {
    std::size_t rem = idx;
    std::vector<double> echo(sweep.axes.size());
    for (std::size_t k = sweep.axes.size(); k-- > 0;) {
      const std::size_t n = sweep.axes[k].count;
      echo[k] = axis_values[k][rem % n];
      rem /= n;
    }
    PointInputs& p = points[idx];
    for (std::size_t k = 0; k < sweep.axes.size(); ++k) {
      const std::string& name = sweep.axes[k].name;
      const double v = echo[k];
      if (name == "beta") p.beta = v;
      else if (name == "omega") p.Omega = v;
      else if (name == "theta") p.theta = v;
      else if (name == "T1") p.T1 = v;
      else if (name == "T2") p.T2 = v;
      else if (name == "u") p.Omega = v * omega0;
      else if (name == "chi") p.T2 = pc.hbar() * omega0 / (2.0 * pc.k_B() * v);
    }
    try {
      (void)KinematicState(p.beta, p.Omega, p.theta);
      (void)BathSpec(p.T2);
      (void)base.with_T1(p.T1);
    } catch (const InvalidParameter& e) {
      throw ConfigError("sweep: grid point " + std::to_string(idx) + " is invalid: " + e.what());
    }
    echoes[idx] = std::move(echo);
  }

  std::vector<PointResult> results(n_points);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n_points; i = next++) {
      results[i] = evaluate_point(points[i], sweep.quantity, base, config.quadrature, pc);
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_points)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  CsvWriter csv(out, config.output.precision);
  std::string fingerprint = serialize_config(config) + "quantity=" + sweep.quantity;
  for (const SweepAxis& a : sweep.axes) {
    fingerprint += ";" + a.name + ":" + format_double(a.min) + ":" + format_double(a.max) + ":" +
                   std::to_string(a.count) + (a.spacing == Spacing::log ? ":log" : ":linear");
  }
  provenance(csv, "sweep", fingerprint);
  {
    const KinematicState s0(points[0].beta, points[0].Omega, points[0].theta);
    report_warnings(csv, diag, validate_dipole_conditions(base.with_T1(points[0].T1),
                                                          BathSpec(points[0].T2), s0, pc));
  }
  std::vector<std::string> header;
  for (const SweepAxis& a : sweep.axes) header.push_back(a.name);
  header.push_back(sweep.quantity);
  header.push_back("err_est");
  header.push_back("failed");
  csv.header(header);

  bool any_failed = false;
  for (std::size_t i = 0; i < n_points; ++i) {
    std::vector<std::string> fields;
    for (double v : echoes[i]) fields.push_back(csv.number(v));
    fields.push_back(csv.number(results[i].value));
    fields.push_back(csv.number(results[i].error));
    fields.push_back(results[i].failed ? "1" : "0");
    any_failed = any_failed || results[i].failed;
    csv.row(fields);
  }
  if (any_failed) {
    diag << "error: one or more grid points failed to converge\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  if (!config.solver) throw ConfigError("evolve: the [solver] section is required");
  const PhysicalConstants& pc = config.physical_constants();
  const ParticleSpec particle = smooth_particle(config, "evolve");
  const BathSpec bath = config.bath();
  const KinematicState state = config.state();
  const SolverSection& s = *config.solver;

  CsvWriter csv(out, config.output.precision);
  provenance(csv, "evolve", serialize_config(config));
  report_warnings(csv, diag, validate_dipole_conditions(particle, bath, state, pc));

  const Trajectory traj =
      evolve(state, particle, bath, s.t_start_s, s.t_end_s, s.config, config.quadrature, pc);
  csv.header({"t", "beta", "F_prime_x", "Q_dot"});
  for (const TrajectorySample& smp : traj.samples) {
    csv.row(std::vector<double>{smp.t, smp.beta, smp.F_prime_x,
                                s.config.record_heating ? smp.Q_dot : std::nan("")});
  }
  std::ostringstream stats;
  stats << "steps=" << traj.steps << " rejected=" << traj.rejected_steps
        << " rhs_evaluations=" << traj.rhs_evaluations;
  csv.comment(stats.str());
  if (!traj.ok()) {
    csv.comment(std::string("aborted: ") + to_string(traj.status) + ": " + traj.message);
    diag << "error: integration aborted (" << to_string(traj.status) << "): " << traj.message << "\n";
    return kExitSolverAbort;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Radiative friction on a rotating polarizable particle in blackbody radiation",
               "bbfric"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::string out_path;
  std::optional<double> quad_rtol;
  std::optional<std::uint64_t> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  const auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "Sectioned key = value run configuration");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Output CSV path (default: standard output)");
    sub->add_option("--quad-rtol", quad_rtol, "Override quadrature.rel_tol");
    sub->add_option("--seed", seed, "Reserved; all computation is deterministic");
  };

  auto* force = app.add_subcommand("force", "Forces and heating rate at one state");
  common(force, true);

  std::string chi_text = "2.5";
  double theta = 0.0;
  auto* threshold = app.add_subcommand("threshold", "Rotation rate at which friction turns into push");
  common(threshold, false);
  threshold->add_option("--chi", chi_text, "Comma-separated chi = hbar omega0 / 2 k_B T2 values");
  threshold->add_option("--theta", theta, "Angle between rotation axis and velocity (rad)");

  double u_max = 1.5;
  std::size_t n_points = 151;
  std::string fig2_chis = "1.5,2,2.5,3";
  auto* fig2 = app.add_subcommand("fig2", "Normalized resonance force curves at theta = 0");
  common(fig2, false);
  fig2->add_option("--u-max", u_max, "Largest Omega / omega0");
  fig2->add_option("--n-points", n_points, "Points per curve");
  fig2->add_option("--chi", fig2_chis, "Comma-separated chi values");

  std::vector<std::string> axis_texts;
  std::string quantity;
  auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep");
  common(sweep, true);
  sweep->add_option("--axis", axis_texts, "name:min:max:count[:linear|log]; repeatable");
  sweep->add_option("--quantity", quantity, "F_prime | F_x | Q_dot | f_normalized");
  sweep->add_option("--threads", threads, "Worker threads");

  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate beta(t)");
  common(evolve_cmd, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    if (quad_rtol) {
      config.quadrature.rel_tol = *quad_rtol;
      try {
        config.quadrature.validate();
      } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
      }
    }
    if (!out_path.empty()) config.output.path = out_path;

    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    if (config.output.path != "-") {
      file = std::make_unique<std::ofstream>(config.output.path);
      if (!*file) throw ConfigError("cannot open output file '" + config.output.path + "'");
      sink = file.get();
    }

    if (*force) return cmd_force(config, *sink, diag);
    if (*threshold) {
      const auto chis = parse_list(chi_text);
      return cmd_threshold(chis, theta, config.output, *sink);
    }
    if (*fig2) {
      const auto chis = parse_list(fig2_chis);
      return cmd_fig2(u_max, n_points, chis, config.output, *sink);
    }
    if (*sweep) {
      SweepSpec spec = config.sweep.value_or(SweepSpec{});
      if (!axis_texts.empty()) {
        spec.axes.clear();
        for (const std::string& t : axis_texts) spec.axes.push_back(parse_axis(t));
      }
      if (!quantity.empty()) spec.quantity = quantity;
      return cmd_sweep(config, spec, threads, *sink, diag);
    }
    return cmd_evolve(config, *sink, diag);
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UnsupportedEvaluation& e) {
    diag << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidParameter& e) {
    diag << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace bbfric::cli
