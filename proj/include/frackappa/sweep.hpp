#pragma once

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "frackappa/config.hpp"
#include "frackappa/response.hpp"
#include "frackappa/threelevel.hpp"

namespace frackappa {

/// Everything computed for one alpha of a sweep.
struct SweepPoint {
  double alpha;
  double b_offset;
  double e0, e1, e2;
  double e10, e20;
  double lam00, lam11, lam10, lam20;
  double kappa1, kappa2;
  double kappa1_app, kappa2_app;
  FractionalMaximum kappa2_max_frac;
  double trk00_residual;
  ConvergenceDeltas deltas;
  bool converged;

  /// Leading block (up to 5x5) of the lambda matrix and TRK residuals.
  Eigen::MatrixXd lambda_block;
  Eigen::MatrixXd trk_block;
  /// Three-level inputs measured from the spectrum.
  double moment_ratio;
  double energy_ratio;
  std::optional<FiniteFieldResult> finite_field;
};

struct SweepRow {
  double alpha;
  std::optional<SweepPoint> point;
  /// Set when any stage failed for this alpha.
  std::string error;
};

/// The calibrated system and spectrum for one alpha of a config.
struct SolvedPoint {
  System system;
  CalibrationResult calibration;
};

SolvedPoint solve_point(const RunConfig& config, double alpha);

/// Computes one row; module errors are captured in the row, not thrown.
SweepRow compute_row(const RunConfig& config, double alpha);

/// Rows in alpha_list order, computed on `config.jobs` worker threads.
std::vector<SweepRow> run_sweep(const RunConfig& config);

/// Column names, comma-separated, in output order.
std::string sweep_header();

/// Deterministic CSV: 12 significant digits, one row per alpha. Rows that
/// failed carry empty numeric fields and `error` in the converged column.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Grid samples of the potential and the first five states: x, V, psi0..psi4.
void emit_wavefunctions(const RunConfig& config, double alpha, std::ostream& out);

void write_lambda_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_trk_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_threelevel_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_finitefield_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Formats with 12 significant digits, independent of locale.
std::string format_number(double v);

}  // namespace frackappa
