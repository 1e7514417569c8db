#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "frackappa/hamiltonian.hpp"

namespace frackappa {

/// Canonical-position matrix elements (xh)_ij between retained eigenstates.
struct TransitionTable {
  Eigen::MatrixXd moments;

  std::size_t count() const { return static_cast<std::size_t>(moments.rows()); }
  /// xbar_ij = xh_ij - delta_ij xh_00.
  double bar(std::size_t i, std::size_t j) const;
};

/// Sum-rule matrix lambda(alpha, k, l), dimensionless.
struct LambdaMatrix {
  Eigen::MatrixXd values;
};

TransitionTable transition_moments(const Spectrum& spectrum, const PhysicalConstants& consts);

/// <k| 1/2 xi^2 D + 1/2 D xi^2 - xi D xi |l> with D the Riesz derivative of
/// order 2 alpha and xi = |x|^alpha sign(x). On the grid the sandwiched
/// operator has entries D_ij (xi_i - xi_j)^2 / 2, which is what gets summed.
LambdaMatrix lambda_matrix(const Spectrum& spectrum);

struct TrkResidual {
  /// |sum_q x_kq x_ql [E_q - (E_k + E_l)/2] - hbar^2/2m lambda_kl| / (hbar^2/2m)
  double residual;
  /// Change in the residual when the last 10 retained states are dropped.
  double tail_change;
  /// False when tail_change >= 1e-3: the state sum is not converged.
  bool converged;
};

TrkResidual trk_residual(const Spectrum& spectrum, const TransitionTable& table,
                         const LambdaMatrix& lambda, std::size_t k, std::size_t l,
                         const PhysicalConstants& consts);

/// 2 e^2 sum'_k x_0k x_k0 / E_k0 over states 1..k_sum-1.
double sos_kappa1(const TransitionTable& table, const Eigen::VectorXd& energies, std::size_t k_sum,
                  const PhysicalConstants& consts);

/// 3 e^3 sum'_{k,l} x_0k xbar_kl x_l0 / (E_k0 E_l0) over states 1..k_sum-1.
double sos_kappa2(const TransitionTable& table, const Eigen::VectorXd& energies, std::size_t k_sum,
                  const PhysicalConstants& consts);

struct FiniteFieldResult {
  double kappa1;
  double kappa2;
  /// Field step actually used after the noise guard.
  double step;
  /// Field values and ground energies, -3h..3h.
  std::vector<double> fields;
  std::vector<double> energies;
};

struct FiniteFieldOptions {
  double step = 1e-3;
  /// Ground-energy noise floor is taken as this many ulps of the largest Hamiltonian row sum.
  double noise_ulps = 64.0;
  /// Required ratio of the quadratic energy shift to the noise floor.
  double signal_to_noise = 1e6;
  int max_adjust = 12;
};

/// Ground energy of `system` with the field term e F xh added, for each field F.
std::vector<double> field_energies(const System& system, const std::vector<double>& fields);

/// Static response from the field dependence of the ground energy. The seven
/// energies at F in {0, +-h, +-2h, +-3h} are fitted by a sextic
/// E0(F) = c0 + c1 F + ... + c6 F^6, and
///   kappa1 = -2 c2,  kappa2 = 3 c3,
/// which matches the sum-over-states prefactors with the field coupling +e F xh.
FiniteFieldResult finite_field_kappa(const System& system, const FiniteFieldOptions& options = {});

/// Interpolating polynomial through equally spaced field points (at least
/// five); returns c0..c_{n-1}.
std::vector<double> fit_polynomial(const std::vector<double>& fields, const std::vector<double>& energies);

struct ConvergenceDeltas {
  /// Relative changes of kappa1/kappa2 for k_sum -> k_sum + 10.
  double kappa1_states;
  double kappa2_states;
  /// Relative changes of kappa1/kappa2 for dx -> dx/2.
  double kappa1_grid;
  double kappa2_grid;

  bool converged(double tol = 1e-2) const;
};

/// Responses of a calibrated system plus their refinement deltas. The grid
/// refinement keeps the box and the calibrated offset and uses 2n + 1 points.
struct ResponseReport {
  double kappa1;
  double kappa2;
  double kappa1_apparent;
  double kappa2_apparent;
  double e10;
  double e20;
  std::size_t k_sum;
  ConvergenceDeltas deltas;
};

/// Relative change |b - a| / max(|a|, |b|, floor); floor keeps null responses from blowing up.
double relative_change(double a, double b, double floor = 1e-12);

/// Refinement deltas for a calibrated system whose spectrum is already known.
/// `spectrum` must hold at least k_sum + 10 states.
ConvergenceDeltas convergence_report(const System& system, const Spectrum& spectrum,
                                     std::size_t k_sum);

ResponseReport response_report(const System& system, const Spectrum& spectrum, std::size_t k_sum);

}  // namespace frackappa
