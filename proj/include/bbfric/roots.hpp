#pragma once

#include <cmath>
#include <cstddef>

#include "bbfric/errors.hpp"

namespace bbfric {

struct RootResult {
  double root = 0.0;
  double value_at_root = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Bisection on a sign-changing bracket [lo, hi]. Stops when the bracket is
/// narrower than x_tol or f hits zero exactly.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double x_tol, std::size_t max_iter = 200) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0, true};
  if (f_hi == 0.0) return {hi, 0.0, 0, true};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw InvalidParameter("bisect: bracket does not change sign");
  }

  RootResult r;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      return {mid, 0.0, r.iterations + 1, true};
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (hi - lo <= x_tol) {
      r.converged = true;
      ++r.iterations;
      break;
    }
  }
  r.root = 0.5 * (lo + hi);
  r.value_at_root = f(r.root);
  return r;
}

}  // namespace bbfric
