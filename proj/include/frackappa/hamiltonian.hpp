#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <variant>
#include <vector>

#include "frackappa/grid.hpp"

namespace frackappa {

/// Atomic units by default; c is the inverse fine-structure constant.
struct PhysicalConstants {
  double m = 1.0;
  double e = 1.0;
  double hbar = 1.0;
  double c = 137.035999;

  void validate() const;
  /// hbar / (m c), the length that makes the fractional coordinate dimensionally consistent.
  double compton_length() const { return hbar / (m * c); }
};

/// Clipped harmonic oscillator: 1/2 m omega^2 (xh - bh)^2 right of a hard wall at x = b.
struct Cqho {
  double omega = 1.0;
  double b = 0.0;
};

/// Slant well: A (xh - bh) right of a hard wall at x = b.
struct SlantWell {
  double slope = 1.0;
  double b = 0.0;
};

/// 1/2 m omega^2 xh^2 on a box centred at the origin.
struct SymmetricHo {
  double omega = 1.0;
};

struct Tabulated {
  std::vector<double> samples;
};

using PotentialSpec = std::variant<Cqho, SlantWell, SymmetricHo, Tabulated>;

/// Canonical position (hbar/mc)^(1-alpha) |x|^alpha sign(x).
double canonical_position(double x, double alpha, const PhysicalConstants& consts);
/// Offset of the wall in the canonical coordinate; same map as canonical_position.
double fractional_offset(double b, double alpha, const PhysicalConstants& consts);
/// Canonical position at every grid sample.
Eigen::VectorXd canonical_positions(const Grid1D& grid, double alpha, const PhysicalConstants& consts);

/// (hbar/mc)^(1 - 1/alpha), equal to 1 at alpha = 1. Measuring x in this unit
/// turns the fractional problem into the one with hbar/mc = 1, so box widths
/// given in this unit contain the same physics at every alpha.
double fractional_length_scale(double alpha, const PhysicalConstants& consts);

/// True for potentials bounded on the left by a hard wall at x = b.
bool has_wall(const PotentialSpec& spec);
/// Wall position b (0 for wall-free potentials).
double wall_offset(const PotentialSpec& spec);
PotentialSpec with_wall_offset(const PotentialSpec& spec, double b);

Eigen::VectorXd potential_on_grid(const PotentialSpec& spec, const Grid1D& grid, double alpha,
                                  const PhysicalConstants& consts);

/// (m c^2 / 2)(hbar/mc)^(2 alpha); equals hbar^2/2m at alpha = 1.
double kinetic_prefactor(double alpha, const PhysicalConstants& consts);

/// Kinetic matrix -(m c^2/2)(hbar/mc)^(2 alpha) D_riesz(2 alpha).
Eigen::MatrixXd kinetic_matrix(const Grid1D& grid, double alpha, const PhysicalConstants& consts);

/// H = kinetic_matrix + diag(potential).
Eigen::MatrixXd assemble(const Grid1D& grid, double alpha, const Eigen::VectorXd& potential,
                         const PhysicalConstants& consts);

/// Lowest eigenpairs of a Hamiltonian on a grid. Columns of `states` are
/// normalized so that inner_product(psi, psi) = 1 and the first component
/// above 1e-6 max|psi| is positive.
struct Spectrum {
  double alpha;
  Grid1D grid;
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;

  std::size_t count() const { return static_cast<std::size_t>(energies.size()); }
  Eigen::VectorXd state(std::size_t k) const { return states.col(static_cast<Eigen::Index>(k)); }
};

/// Lowest `k_states` eigenpairs of the symmetric matrix `hamiltonian`.
/// Requires k_states <= n/4. Tridiagonal input takes a banded fast path.
Spectrum solve(const Eigen::MatrixXd& hamiltonian, std::size_t k_states, const Grid1D& grid,
               double alpha);

/// Lowest eigenvalue only.
double ground_energy(const Eigen::MatrixXd& hamiltonian);

/// How the box is laid out around a potential: n interior points over `width`.
/// Walled potentials get the box (b, b + width); the rest get (-width/2, width/2).
struct GridPolicy {
  std::size_t n = 3000;
  double width = 16.0;
};

Grid1D grid_for(const PotentialSpec& spec, const GridPolicy& policy);

/// Policy whose width is `width` fractional length scales.
GridPolicy scaled_policy(std::size_t n, double width, double alpha, const PhysicalConstants& consts);

/// A fully specified single-particle problem.
struct System {
  PotentialSpec potential;
  GridPolicy policy;
  double alpha = 1.0;
  PhysicalConstants consts;

  Grid1D grid() const { return grid_for(potential, policy); }
  Eigen::MatrixXd hamiltonian() const;
  Spectrum spectrum(std::size_t k_states) const;
};

struct CalibrationResult {
  double b;
  Spectrum spectrum;
  int iterations;
  /// Ground-state canonical position <0|xh|0> at the returned offset.
  double residual;
};

struct CalibrationOptions {
  double tol = 1e-8;
  int max_iter = 50;
  std::size_t k_states = 20;
  /// Number of successively halved grids calibrated first to seed the secant.
  int coarse_levels = 2;
};

/// Moves the wall until the ground state sits at the origin of the canonical
/// coordinate, |<0|xh|0>| < tol. Secant iteration on <0|xh|0>(b) from b and
/// b - <0|xh|0>, where b is the offset stored in `spec` or, with coarse levels,
/// the offset calibrated on a grid with half the points. Wall-free potentials
/// are returned unchanged.
CalibrationResult calibrate_offset(const PotentialSpec& spec, const GridPolicy& policy, double alpha,
                                   const PhysicalConstants& consts, const CalibrationOptions& options);

/// <psi_k| xh |psi_k> by quadrature.
double canonical_expectation(const Spectrum& spectrum, std::size_t k, const PhysicalConstants& consts);

}  // namespace frackappa
