#include "bbfric/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "bbfric/errors.hpp"

namespace bbfric::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, const std::string& where) {
  text = trim(text);
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(where + ": expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) throw ConfigError(where + ": value must be finite");
  return v;
}

std::size_t parse_count(std::string_view text, const std::string& where) {
  text = trim(text);
  std::size_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(where + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, const std::string& where) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(where + ": expected true or false");
}

Spacing parse_spacing(std::string_view text, const std::string& where) {
  if (text == "linear" || text == "lin") return Spacing::linear;
  if (text == "log") return Spacing::log;
  throw ConfigError(where + ": spacing must be linear or log");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) parts.push_back(s.substr(start, i - start));
  }
  return parts;
}

SweepAxis make_axis(const std::vector<std::string_view>& f, const std::string& where) {
  if (f.size() != 4 && f.size() != 5) {
    throw ConfigError(where + ": axis needs name, min, max, count[, spacing]");
  }
  SweepAxis axis;
  axis.name = std::string(f[0]);
  const auto& names = sweepable_parameters();
  if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
    throw ConfigError(where + ": '" + axis.name + "' is not a sweepable parameter");
  }
  axis.min = parse_number(f[1], where);
  axis.max = parse_number(f[2], where);
  axis.count = parse_count(f[3], where);
  if (f.size() == 5) axis.spacing = parse_spacing(f[4], where);
  if (axis.count < 2) throw ConfigError(where + ": axis count must be >= 2");
  if (axis.spacing == Spacing::log && !(axis.min > 0.0 && axis.max > 0.0)) {
    throw ConfigError(where + ": log spacing needs positive bounds");
  }
  return axis;
}

std::string axis_text(const SweepAxis& a) {
  return a.name + " " + format_double(a.min) + " " + format_double(a.max) + " " +
         std::to_string(a.count) + " " + (a.spacing == Spacing::log ? "log" : "linear");
}

bool same_quadrature(const QuadratureConfig& a, const QuadratureConfig& b) {
  return a.rel_tol == b.rel_tol && a.abs_tol == b.abs_tol &&
         a.max_subdivisions == b.max_subdivisions;
}

template <class T>
const T& require(const std::optional<T>& v, const char* key) {
  if (!v) throw ConfigError(std::string("missing required key ") + key);
  return *v;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {"beta", "omega", "theta", "T1", "T2", "chi", "u"};
  return names;
}

const std::vector<std::string>& sweep_quantities() {
  static const std::vector<std::string> names = {"F_prime", "F_x", "Q_dot", "f_normalized"};
  return names;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    if (spacing == Spacing::linear) {
      v[i] = min + s * (max - min);
    } else {
      v[i] = std::exp(std::log(min) + s * (std::log(max) - std::log(min)));
    }
  }
  v.front() = min;
  v.back() = max;
  return v;
}

SweepAxis parse_axis(std::string_view text) {
  return make_axis(split(text, ':'), "--axis " + std::string(text));
}

bool operator==(const SolverSection& a, const SolverSection& b) {
  const SolverConfig& x = a.config;
  const SolverConfig& y = b.config;
  return x.rel_tol == y.rel_tol && x.abs_tol == y.abs_tol && x.initial_step == y.initial_step &&
         x.max_steps == y.max_steps && x.sample_interval == y.sample_interval &&
         x.record_heating == y.record_heating && a.t_start_s == b.t_start_s &&
         a.t_end_s == b.t_end_s;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.constants == b.constants && a.T2_K == b.T2_K && a.mass_kg == b.mass_kg &&
         a.radius_m == b.radius_m && a.T1_K == b.T1_K && a.model == b.model && a.beta == b.beta &&
         a.omega_rad_s == b.omega_rad_s && a.theta_rad == b.theta_rad &&
         same_quadrature(a.quadrature, b.quadrature) && a.solver == b.solver &&
         a.output == b.output && a.sweep == b.sweep;
}

const PhysicalConstants& RunConfig::physical_constants() const {
  return constants ? *constants : kCodata;
}

PolarizabilityModel RunConfig::polarizability() const {
  const ModelSection& m = require(model, "particle.model");
  try {
    if (m.kind == "lorentz") {
      return PolarizabilityModel::lorentz(m.alpha0_m3, m.omega0_rad_s,
                                          require(m.gamma_d_rad_s, "particle.gamma_d_rad_s"));
    }
    return PolarizabilityModel::delta_resonance(m.alpha0_m3, m.omega0_rad_s);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("particle: ") + e.what());
  }
}

BathSpec RunConfig::bath() const {
  try {
    return BathSpec(require(T2_K, "bath.T2_K"));
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("bath: ") + e.what());
  }
}

ParticleSpec RunConfig::particle() const {
  try {
    return ParticleSpec(require(mass_kg, "particle.mass_kg"), require(radius_m, "particle.radius_m"),
                        require(T1_K, "particle.T1_K"), polarizability());
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("particle: ") + e.what());
  }
}

KinematicState RunConfig::state() const {
  try {
    return KinematicState(require(beta, "state.beta"), omega_rad_s, theta_rad);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::set<std::string> seen;
  std::set<std::string> sections_seen;

  std::optional<double> hbar, k_B, c;
  ModelSection model;
  bool model_seen = false;
  SolverSection solver;
  bool solver_seen = false;
  SweepSpec sweep;
  bool sweep_seen = false;

  using Handler = std::function<void(std::string_view, const std::string&)>;
  auto num = [](std::optional<double>& dst) -> Handler {
    return [&dst](std::string_view v, const std::string& w) { dst = parse_number(v, w); };
  };
  auto plain = [](double& dst) -> Handler {
    return [&dst](std::string_view v, const std::string& w) { dst = parse_number(v, w); };
  };

  const std::map<std::string, std::map<std::string, Handler>> schema = {
      {"constants", {{"hbar_J_s", num(hbar)}, {"k_B_J_K", num(k_B)}, {"c_m_s", num(c)}}},
      {"bath", {{"T2_K", num(cfg.T2_K)}}},
      {"particle",
       {{"mass_kg", num(cfg.mass_kg)},
        {"radius_m", num(cfg.radius_m)},
        {"T1_K", num(cfg.T1_K)},
        {"model",
         [&](std::string_view v, const std::string& w) {
           if (v != "lorentz" && v != "delta") throw ConfigError(w + ": model must be lorentz or delta");
           model.kind = std::string(v);
           model_seen = true;
         }},
        {"alpha0_m3", plain(model.alpha0_m3)},
        {"omega0_rad_s", plain(model.omega0_rad_s)},
        {"gamma_d_rad_s", num(model.gamma_d_rad_s)}}},
      {"state",
       {{"beta", num(cfg.beta)},
        {"omega_rad_s", plain(cfg.omega_rad_s)},
        {"theta_rad", plain(cfg.theta_rad)}}},
      {"quadrature",
       {{"rel_tol", plain(cfg.quadrature.rel_tol)},
        {"abs_tol", plain(cfg.quadrature.abs_tol)},
        {"max_subdivisions",
         [&](std::string_view v, const std::string& w) {
           cfg.quadrature.max_subdivisions = parse_count(v, w);
         }}}},
      {"solver",
       {{"rel_tol", plain(solver.config.rel_tol)},
        {"abs_tol", plain(solver.config.abs_tol)},
        {"initial_step_s", plain(solver.config.initial_step)},
        {"max_steps",
         [&](std::string_view v, const std::string& w) { solver.config.max_steps = parse_count(v, w); }},
        {"sample_interval_s", plain(solver.config.sample_interval)},
        {"t_start_s", plain(solver.t_start_s)},
        {"t_end_s", plain(solver.t_end_s)},
        {"record_heating",
         [&](std::string_view v, const std::string& w) {
           solver.config.record_heating = parse_bool(v, w);
         }}}},
      {"output",
       {{"path", [&](std::string_view v, const std::string&) { cfg.output.path = std::string(v); }},
        {"precision",
         [&](std::string_view v, const std::string& w) {
           const auto p = parse_count(v, w);
           if (p > 17) throw ConfigError(w + ": precision must be 0..17");
           cfg.output.precision = static_cast<int>(p);
         }}}},
      {"sweep",
       {{"quantity",
         [&](std::string_view v, const std::string& w) {
           const auto& q = sweep_quantities();
           if (std::find(q.begin(), q.end(), v) == q.end()) {
             throw ConfigError(w + ": unknown quantity '" + std::string(v) + "'");
           }
           sweep.quantity = std::string(v);
         }},
        {"axis", [&](std::string_view v, const std::string& w) {
           sweep.axes.push_back(make_axis(split_ws(v), w));
         }}}},
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where_line = "line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where_line + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema.contains(section)) throw ConfigError(where_line + ": unknown section [" + section + "]");
      if (!sections_seen.insert(section).second) {
        throw ConfigError(where_line + ": duplicate section [" + section + "]");
      }
      if (section == "solver") solver_seen = true;
      if (section == "sweep") sweep_seen = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where_line + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(where_line + ": key '" + key + "' outside any section");

    const auto& keys = schema.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ConfigError(where_line + ": unknown key '" + key + "' in [" + section + "]");
    }
    const std::string where = section + "." + key;
    if (key != "axis" && !seen.insert(where).second) {
      throw ConfigError(where_line + ": duplicate key '" + where + "'");
    }
    it->second(value, where);
  }

  if (hbar || k_B || c) {
    if (!(hbar && k_B && c)) {
      throw ConfigError("[constants] must set hbar_J_s, k_B_J_K and c_m_s together");
    }
    try {
      cfg.constants = PhysicalConstants::custom(*hbar, *k_B, *c);
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string("constants: ") + e.what());
    }
  }

  if (model_seen || seen.contains("particle.alpha0_m3") || seen.contains("particle.omega0_rad_s")) {
    if (!seen.contains("particle.alpha0_m3")) throw ConfigError("missing required key particle.alpha0_m3");
    if (!seen.contains("particle.omega0_rad_s")) throw ConfigError("missing required key particle.omega0_rad_s");
    if (model.kind == "lorentz" && !model.gamma_d_rad_s) {
      throw ConfigError("missing required key particle.gamma_d_rad_s for the lorentz model");
    }
    if (model.kind == "delta" && model.gamma_d_rad_s) {
      throw ConfigError("particle.gamma_d_rad_s does not apply to the delta model");
    }
    cfg.model = model;
  } else if (seen.contains("particle.gamma_d_rad_s")) {
    throw ConfigError("particle.gamma_d_rad_s given without a model");
  }

  try {
    cfg.quadrature.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }

  if (solver_seen) {
    if (!seen.contains("solver.t_end_s")) throw ConfigError("missing required key solver.t_end_s");
    try {
      solver.config.validate();
    } catch (const InvalidParameter& e) {
      throw ConfigError(e.what());
    }
    if (!(solver.t_end_s > solver.t_start_s)) {
      throw ConfigError("solver: t_end_s must exceed t_start_s");
    }
    cfg.solver = solver;
  }
  // Domain checks reuse the library's own preconditions.
  const auto check = [](const char* what, const auto& build) {
    try {
      build();
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  };
  const auto positive = [](const char* key, const std::optional<double>& v) {
    if (v && !(*v > 0.0)) throw ConfigError(std::string(key) + " must be > 0");
  };
  positive("bath.T2_K", cfg.T2_K);
  positive("particle.mass_kg", cfg.mass_kg);
  positive("particle.radius_m", cfg.radius_m);
  positive("particle.T1_K", cfg.T1_K);
  if (cfg.model) check("particle", [&] { (void)cfg.polarizability(); });
  if (cfg.beta) check("state", [&] { (void)KinematicState(*cfg.beta, cfg.omega_rad_s, cfg.theta_rad); });

  if (sweep_seen) cfg.sweep = sweep;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = precision > 0
                       ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision)
                       : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  const auto kv = [&](const char* key, double v) { os << key << " = " << format_double(v) << "\n"; };

  if (cfg.constants) {
    os << "[constants]\n";
    kv("hbar_J_s", cfg.constants->hbar());
    kv("k_B_J_K", cfg.constants->k_B());
    kv("c_m_s", cfg.constants->c());
    os << "\n";
  }
  if (cfg.T2_K) {
    os << "[bath]\n";
    kv("T2_K", *cfg.T2_K);
    os << "\n";
  }
  if (cfg.mass_kg || cfg.radius_m || cfg.T1_K || cfg.model) {
    os << "[particle]\n";
    if (cfg.mass_kg) kv("mass_kg", *cfg.mass_kg);
    if (cfg.radius_m) kv("radius_m", *cfg.radius_m);
    if (cfg.T1_K) kv("T1_K", *cfg.T1_K);
    if (cfg.model) {
      os << "model = " << cfg.model->kind << "\n";
      kv("alpha0_m3", cfg.model->alpha0_m3);
      kv("omega0_rad_s", cfg.model->omega0_rad_s);
      if (cfg.model->gamma_d_rad_s) kv("gamma_d_rad_s", *cfg.model->gamma_d_rad_s);
    }
    os << "\n";
  }
  os << "[state]\n";
  if (cfg.beta) kv("beta", *cfg.beta);
  kv("omega_rad_s", cfg.omega_rad_s);
  kv("theta_rad", cfg.theta_rad);
  os << "\n[quadrature]\n";
  kv("rel_tol", cfg.quadrature.rel_tol);
  kv("abs_tol", cfg.quadrature.abs_tol);
  os << "max_subdivisions = " << cfg.quadrature.max_subdivisions << "\n";
  if (cfg.solver) {
    const SolverConfig& s = cfg.solver->config;
    os << "\n[solver]\n";
    kv("rel_tol", s.rel_tol);
    kv("abs_tol", s.abs_tol);
    kv("initial_step_s", s.initial_step);
    os << "max_steps = " << s.max_steps << "\n";
    kv("sample_interval_s", s.sample_interval);
    kv("t_start_s", cfg.solver->t_start_s);
    kv("t_end_s", cfg.solver->t_end_s);
    os << "record_heating = " << (s.record_heating ? "true" : "false") << "\n";
  }
  os << "\n[output]\n";
  os << "path = " << cfg.output.path << "\n";
  os << "precision = " << cfg.output.precision << "\n";
  if (cfg.sweep) {
    os << "\n[sweep]\n";
    os << "quantity = " << cfg.sweep->quantity << "\n";
    for (const SweepAxis& a : cfg.sweep->axes) os << "axis = " << axis_text(a) << "\n";
  }
  return os.str();
}

}  // namespace bbfric::cli
