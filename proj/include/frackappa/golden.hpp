#pragma once

#include <cmath>
#include <utility>

namespace frackappa {

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Returns (argmax, f(argmax)); stops once the bracket is narrower than tol.
template <class F>
std::pair<double, double> golden_section_maximize(F&& f, double lo, double hi, double tol = 1e-10,
                                                  int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  // The bracket ends may beat the interior probes when the maximum sits on a boundary.
  double best_x = fc >= fd ? c : d;
  double best_f = fc >= fd ? fc : fd;
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best_f) {
      best_x = x;
      best_f = fx;
    }
  }
  return {best_x, best_f};
}

}  // namespace frackappa
