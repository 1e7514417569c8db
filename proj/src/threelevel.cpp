#include "frackappa/threelevel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frackappa/error.hpp"
#include "frackappa/golden.hpp"

namespace frackappa {

namespace {

double prefactor(const ThreeLevelParams& p) {
  return p.consts.hbar / std::sqrt(2.0 * p.consts.m * p.e10);
}

// sqrt(X^2 lam00 + lam11), shared by the (1,1)-constrained moments.
double mixed_root(const ThreeLevelParams& p) {
  const double x = p.moment_ratio;
  const double arg = x * x * p.lam00 + p.lam11;
  if (arg < 0.0) throw DomainError("X^2 lam00 + lam11 is negative; lam11 out of range");
  return std::sqrt(arg);
}

void require_energy_below_one(const ThreeLevelParams& p, const char* what) {
  if (!(p.energy_ratio < 1.0)) {
    throw DomainError(std::string(what) + " is singular at E = 1 (sqrt(1 - E) denominator)");
  }
}

}  // namespace

void ThreeLevelParams::validate() const {
  consts.validate();
  if (!(energy_ratio >= 0.0 && energy_ratio < 1.0)) {
    throw ParameterError("energy ratio E must lie in [0, 1), got " + std::to_string(energy_ratio));
  }
  if (!(moment_ratio >= 0.0 && moment_ratio <= 1.0)) {
    throw ParameterError("moment ratio X must lie in [0, 1], got " + std::to_string(moment_ratio));
  }
  if (!(e10 > 0.0)) throw ParameterError("E10 must be positive");
  if (!(lam00 > 0.0)) throw ParameterError("lambda(0,0) must be positive");
  if (electrons < 1) throw ParameterError("electron count must be at least 1");
}

double x10_max(double e10, double lam00, const PhysicalConstants& consts) {
  if (!(e10 > 0.0)) throw ParameterError("E10 must be positive");
  if (!(lam00 > 0.0)) throw ParameterError("lambda(0,0) must be positive");
  return consts.hbar * std::sqrt(lam00) / std::sqrt(2.0 * consts.m * e10);
}

double tl_x10(const ThreeLevelParams& p) {
  p.validate();
  return prefactor(p) * p.moment_ratio * std::sqrt(p.lam00);
}

double tl_x20(const ThreeLevelParams& p) {
  p.validate();
  const double x = p.moment_ratio;
  return prefactor(p) * std::sqrt(p.energy_ratio * (1.0 - x * x)) * std::sqrt(p.lam00);
}

double tl_x12(const ThreeLevelParams& p) {
  p.validate();
  require_energy_below_one(p, "x12");
  const double e = p.energy_ratio;
  return prefactor(p) * std::sqrt(e / (1.0 - e)) * mixed_root(p);
}

double tl_x11bar(const ThreeLevelParams& p) {
  p.validate();
  require_energy_below_one(p, "x11bar");
  const double x = p.moment_ratio;
  const double e = p.energy_ratio;
  if (x == 0.0) throw DomainError("x11bar is singular at X = 0 (1/X factor)");
  const double first = (e - 2.0) / std::sqrt(1.0 - e) * std::sqrt(1.0 - x * x) / x * mixed_root(p);
  const double second = p.lam10 / (x * std::sqrt(p.lam00));
  return prefactor(p) * (first - second);
}

double tl_x22bar(const ThreeLevelParams& p) {
  p.validate();
  require_energy_below_one(p, "x22bar");
  const double x = p.moment_ratio;
  const double e = p.energy_ratio;
  if (x == 1.0) throw DomainError("x22bar is singular at X = 1 (1/sqrt(1 - X^2) factor)");
  const double rest = 1.0 - x * x;
  const double first = (1.0 - 2.0 * e) / std::sqrt(1.0 - e) * x / std::sqrt(rest) * mixed_root(p);
  const double second = std::sqrt(e / rest) * p.lam20 / std::sqrt(p.lam00);
  return prefactor(p) * (first - second);
}

ConstrainedMoments constrained_moments(const ThreeLevelParams& p) {
  return {tl_x10(p), tl_x20(p), tl_x12(p), tl_x11bar(p), tl_x22bar(p)};
}

double tl_kappa1(const ThreeLevelParams& p) {
  p.validate();
  const auto& k = p.consts;
  const double x2 = p.moment_ratio * p.moment_ratio;
  const double e = p.energy_ratio;
  return k.e * k.e * k.hbar * k.hbar / (k.m * p.e10 * p.e10) * (x2 + e * e * (1.0 - x2)) * p.lam00;
}

double tl_kappa2(const ThreeLevelParams& p) {
  p.validate();
  const auto& k = p.consts;
  const double x = p.moment_ratio;
  const double e = p.energy_ratio;
  const double root_rest = std::sqrt(1.0 - x * x);
  const double root_lam00 = std::sqrt(p.lam00);
  const double scale = 1.5 * std::pow(k.e * k.hbar, 3) /
                       std::sqrt(2.0 * std::pow(k.m, 3) * std::pow(p.e10, 7));
  const double leading = x * root_rest * std::pow(1.0 - e, 1.5) * (2.0 + 3.0 * e + 2.0 * e * e) *
                         p.lam00 * mixed_root(p);
  const double from_lam10 = x * root_lam00 * p.lam10;
  const double from_lam20 = root_rest * std::pow(e, 3.5) * root_lam00 * p.lam20;
  return scale * (leading - from_lam10 - from_lam20);
}

double kappa2_max_standard(double e10, int electrons, const PhysicalConstants& consts) {
  if (!(e10 > 0.0)) throw ParameterError("E10 must be positive");
  if (electrons < 1) throw ParameterError("electron count must be at least 1");
  const double n = electrons;
  return std::pow(3.0, 0.25) * std::pow(consts.e * consts.hbar, 3) *
         std::sqrt(n * n * n / (std::pow(consts.m, 3) * std::pow(e10, 7)));
}

double kappa1_max_standard(double e10, int electrons, const PhysicalConstants& consts) {
  if (!(e10 > 0.0)) throw ParameterError("E10 must be positive");
  return consts.e * consts.e * consts.hbar * consts.hbar * electrons / (consts.m * e10 * e10);
}

FractionalMaximum kappa2_max_fractional(double lam00, double lam11, double lam10, double lam20,
                                        double e10, const PhysicalConstants& consts,
                                        const MaximizerOptions& options) {
  ThreeLevelParams base;
  base.e10 = e10;
  base.lam00 = lam00;
  base.lam11 = lam11;
  base.lam10 = lam10;
  base.lam20 = lam20;
  base.consts = consts;
  base.validate();

  const auto value = [&](double x, double e) {
    ThreeLevelParams p = base;
    p.moment_ratio = x;
    p.energy_ratio = e;
    return tl_kappa2(p);
  };

  const int n = std::max(options.grid_points, 2);
  const double dx = (options.x_hi - options.x_lo) / (n - 1);
  const double de = (options.e_hi - options.e_lo) / (n - 1);

  struct Point {
    double x, e, f;
  };
  Point hi{options.x_lo, options.e_lo, value(options.x_lo, options.e_lo)};
  Point lo = hi;
  for (int i = 0; i < n; ++i) {
    const double x = options.x_lo + i * dx;
    for (int j = 0; j < n; ++j) {
      const double e = options.e_lo + j * de;
      const double f = value(x, e);
      if (f > hi.f) hi = {x, e, f};
      if (f < lo.f) lo = {x, e, f};
    }
  }

  // Coordinate-wise golden-section polish of sign * f around a grid optimum.
  const auto refine = [&](Point p, double sign) {
    for (int sweep = 0; sweep < options.refine_sweeps; ++sweep) {
      const double x_lo = std::max(options.x_lo, p.x - dx);
      const double x_hi = std::min(options.x_hi, p.x + dx);
      auto [bx, fx] = golden_section_maximize([&](double x) { return sign * value(x, p.e); }, x_lo,
                                              x_hi, 1e-12);
      if (fx >= sign * p.f) p = {bx, p.e, sign * fx};
      const double e_lo = std::max(options.e_lo, p.e - de);
      const double e_hi = std::min(options.e_hi, p.e + de);
      auto [be, fe] = golden_section_maximize([&](double e) { return sign * value(p.x, e); }, e_lo,
                                              e_hi, 1e-12);
      if (fe >= sign * p.f) p = {p.x, be, sign * fe};
    }
    return p;
  };

  hi = refine(hi, 1.0);
  lo = refine(lo, -1.0);
  const Point& best = std::abs(hi.f) >= std::abs(lo.f) ? hi : lo;
  return {best.f, best.x, best.e, hi.f, lo.f};
}

ApparentIntrinsic apparent_intrinsic(double kappa1, double kappa2, double e10, int electrons,
                                     const PhysicalConstants& consts) {
  return {kappa1 / kappa1_max_standard(e10, electrons, consts),
          kappa2 / kappa2_max_standard(e10, electrons, consts)};
}

}  // namespace frackappa
