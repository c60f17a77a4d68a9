#include "bbfric/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "bbfric/errors.hpp"

namespace bbfric {

namespace {

// 21-point Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the
// 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208734715094, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  PanelEstimate est;
  bool splittable;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    // unsplittable panels sink to the bottom
    if (x.splittable != y.splittable) return !x.splittable;
    return x.est.error < y.est.error;
  }
};

double error_target(double value, double l1, double rel_tol, double abs_tol, double l1_tol) {
  return std::max({abs_tol, rel_tol * std::abs(value), l1_tol * l1});
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0) && !(l1_tol > 0.0)) {
    throw InvalidParameter("quadrature: need rel_tol > 0 or abs_tol > 0");
  }
  if (rel_tol < 0.0 || abs_tol < 0.0 || l1_tol < 0.0) {
    throw InvalidParameter("quadrature: tolerances must be non-negative");
  }
  if (max_subdivisions < 1) {
    throw InvalidParameter("quadrature: max_subdivisions must be >= 1");
  }
}

double QuadResult::target(const QuadratureConfig& cfg) const {
  return error_target(value, l1_norm, cfg.rel_tol, cfg.abs_tol, cfg.l1_tol);
}

PanelEstimate gauss_kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 21> fv{};
  const double f_center = f(center);
  double kronrod = kWgk[10] * f_center;
  double gauss = 0.0;
  double l1 = kWgk[10] * std::abs(f_center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kWgk[j] * (f1 + f2);
    l1 += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(f_center - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    asc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }

  const double scale = std::abs(half);
  PanelEstimate est;
  est.kronrod = kronrod * half;
  est.gauss = gauss * half;
  est.l1 = l1 * scale;
  asc *= scale;

  double err = std::abs(est.kronrod - est.gauss);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  if (est.l1 > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(err, 50.0 * kEps * est.l1);
  }
  est.error = err;
  return est;
}

QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < b)) {
    throw InvalidParameter("integrate_finite: need a < b");
  }

  std::vector<double> cuts{a};
  {
    std::vector<double> bp;
    for (double x : cfg.breakpoints) {
      if (x > a && x < b) bp.push_back(x);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    cuts.insert(cuts.end(), bp.begin(), bp.end());
    cuts.push_back(b);
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p{cuts[i], cuts[i + 1], gauss_kronrod21(f, cuts[i], cuts[i + 1]), true};
    value += p.est.kronrod;
    error += p.est.error;
    l1 += p.est.l1;
    heap.push(p);
  }

  const auto target = [&] { return error_target(value, l1, cfg.rel_tol, cfg.abs_tol, cfg.l1_tol); };

  while (error > target() && heap.size() < std::max(cfg.max_subdivisions, cuts.size() - 1)) {
    Panel worst = heap.top();
    if (!worst.splittable) break;
    heap.pop();

    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      worst.splittable = false;
      heap.push(worst);
      continue;
    }
    Panel left{worst.a, mid, gauss_kronrod21(f, worst.a, mid), true};
    Panel right{mid, worst.b, gauss_kronrod21(f, mid, worst.b), true};

    value += left.est.kronrod + right.est.kronrod - worst.est.kronrod;
    error += left.est.error + right.est.error - worst.est.error;
    l1 += left.est.l1 + right.est.l1 - worst.est.l1;

    // A split that gains nothing over the roundoff floor will not gain later either.
    const double floor_left = 50.0 * kEps * left.est.l1;
    const double floor_right = 50.0 * kEps * right.est.l1;
    left.splittable = left.est.error > floor_left;
    right.splittable = right.est.error > floor_right;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the final partition to drop accumulated update drift.
  QuadResult r;
  r.subdivisions_used = heap.size();
  value = error = l1 = 0.0;
  while (!heap.empty()) {
    const Panel& p = heap.top();
    value += p.est.kronrod;
    error += p.est.error;
    l1 += p.est.l1;
    heap.pop();
  }
  r.value = value;
  r.error_estimate = error;
  r.l1_norm = l1;
  r.converged = std::isfinite(value) && error <= target();
  return r;
}

QuadResult integrate_semi_infinite(const Integrand& f, double decay_rate,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    throw InvalidParameter("integrate_semi_infinite: decay_rate must be > 0");
  }
  constexpr std::size_t kMaxWindows = 200;
  const double width = 10.0 / decay_rate;

  double last_bp = 0.0;
  for (double x : cfg.breakpoints) last_bp = std::max(last_bp, x);

  QuadResult total;
  total.converged = true;
  double lo = 0.0;
  double hi = std::max(width, last_bp + 0.5 * width);

  for (std::size_t window = 0; window < kMaxWindows; ++window) {
    QuadratureConfig local = cfg;
    if (window == 0) {
      local.rel_tol *= 0.5;
      local.abs_tol *= 0.5;
      local.l1_tol *= 0.5;
    } else {
      // later windows only need absolute accuracy against what is already known
      const double share = 0.2 * std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(window, 60)));
      local.abs_tol = share * total.target(cfg);
      local.rel_tol = 0.0;
      local.l1_tol = 0.0;
      if (!(local.abs_tol > 0.0)) local.rel_tol = 0.5 * cfg.rel_tol;
    }

    const QuadResult part = integrate_finite(f, lo, hi, local);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.l1_norm += part.l1_norm;
    total.subdivisions_used += part.subdivisions_used;
    total.converged = total.converged && part.converged;

    // Sampled bound on the tail: |f(x)| <= M exp(-rate (x - hi)) for x >= hi.
    double sup = 0.0;
    for (int k = 0; k <= 4; ++k) {
      const double x = hi + k / decay_rate;
      sup = std::max(sup, std::abs(f(x)) * std::exp(decay_rate * (x - hi)));
    }
    const double tail = sup / decay_rate;
    if (!std::isfinite(tail)) {
      total.converged = false;
      total.error_estimate = std::numeric_limits<double>::infinity();
      return total;
    }
    if (tail <= 0.1 * total.target(cfg)) {
      total.error_estimate += tail;
      total.converged = total.converged && total.error_estimate <= total.target(cfg);
      return total;
    }
    lo = hi;
    hi = lo + width;
  }
  total.converged = false;
  return total;
}

}  // namespace bbfric
