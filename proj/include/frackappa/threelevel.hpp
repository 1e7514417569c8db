#pragma once

#include "frackappa/hamiltonian.hpp"

namespace frackappa {

/// Inputs of the sum-rule-constrained three-level model.
struct ThreeLevelParams {
  /// Energy ratio E10/E20 in [0, 1).
  double energy_ratio = 0.0;
  /// |x10| / x10_max in [0, 1].
  double moment_ratio = 1.0;
  double e10 = 1.0;
  double lam00 = 1.0;
  double lam11 = 1.0;
  double lam10 = 0.0;
  double lam20 = 0.0;
  int electrons = 1;
  PhysicalConstants consts;

  void validate() const;
};

/// Largest |x10| allowed by the (0,0) sum rule: hbar sqrt(lam00) / sqrt(2 m E10).
double x10_max(double e10, double lam00, const PhysicalConstants& consts);

double tl_x10(const ThreeLevelParams& p);
double tl_x20(const ThreeLevelParams& p);
/// Singular at E = 1.
double tl_x12(const ThreeLevelParams& p);
/// Singular at X = 0 and E = 1.
double tl_x11bar(const ThreeLevelParams& p);
/// Singular at X = 1 and E = 1.
double tl_x22bar(const ThreeLevelParams& p);

struct ConstrainedMoments {
  double x10;
  double x20;
  double x12;
  double x11bar;
  double x22bar;
};

/// All five constrained moments; throws DomainError at any singular point.
ConstrainedMoments constrained_moments(const ThreeLevelParams& p);

/// Three-level polarizability e^2 hbar^2/(m E10^2) [X^2 + E^2 (1 - X^2)] lam00.
double tl_kappa1(const ThreeLevelParams& p);

/// Three-level hyperpolarizability including the off-diagonal lambda terms.
double tl_kappa2(const ThreeLevelParams& p);

/// 3^(1/4) e^3 hbar^3 sqrt(N^3 / (m^3 E10^7)): the alpha -> 1 three-level maximum.
double kappa2_max_standard(double e10, int electrons, const PhysicalConstants& consts);

/// e^2 hbar^2 N / (m E10^2): tl_kappa1 at X = 1 with lam00 = 1.
double kappa1_max_standard(double e10, int electrons, const PhysicalConstants& consts);

struct FractionalMaximum {
  /// Signed tl_kappa2 at the point of largest |tl_kappa2|.
  double value;
  double moment_ratio;
  double energy_ratio;
  /// Largest and smallest signed values found; both are reported because
  /// large off-diagonal lambdas can make the negative extreme dominant.
  double max_signed;
  double min_signed;
};

struct MaximizerOptions {
  int grid_points = 200;
  double x_lo = 0.01;
  double x_hi = 0.99;
  double e_lo = 0.0;
  double e_hi = 0.95;
  int refine_sweeps = 4;
};

/// Maximum of |tl_kappa2| over (X, E) for fixed lambda elements and E10:
/// coarse grid scan then golden-section refinement along each axis.
FractionalMaximum kappa2_max_fractional(double lam00, double lam11, double lam10, double lam20,
                                        double e10, const PhysicalConstants& consts,
                                        const MaximizerOptions& options = {});

struct ApparentIntrinsic {
  double kappa1;
  double kappa2;
};

/// Responses normalized by the alpha -> 1 three-level maxima at the system's own E10.
ApparentIntrinsic apparent_intrinsic(double kappa1, double kappa2, double e10, int electrons,
                                     const PhysicalConstants& consts);

}  // namespace frackappa
