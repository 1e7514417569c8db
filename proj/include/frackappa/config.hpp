#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "frackappa/hamiltonian.hpp"

namespace frackappa {

enum class PotentialKind { cqho, slantwell, symmetric_ho };

/// Everything a sweep needs. Parsed from a JSON document whose keys are the
/// field names below; missing keys keep these defaults.
struct RunConfig {
  PotentialKind potential = PotentialKind::cqho;
  double omega = 1.0;
  double slope = 1.0;
  std::vector<double> alpha_list{1.0};
  std::size_t n_grid = 3000;
  /// Box width in fractional length scales (a.u. at alpha = 1).
  double domain_width = 16.0;
  std::size_t k_states = 60;
  std::size_t k_sum = 40;
  double calib_tol = 1e-8;
  double field_step = 1e-3;
  std::string output;
  /// Subset of {sweep, wavefunctions, lambda, trk, threelevel, finitefield}.
  std::vector<std::string> emit{"sweep"};
  unsigned jobs = 1;

  /// k_sum capped at k_states.
  std::size_t effective_k_sum() const;
  /// States to solve for: room for k_sum + 10 in the convergence report.
  std::size_t solved_states() const;
  bool emits(std::string_view what) const;
  /// Starting (uncalibrated) potential for a given kind.
  PotentialSpec potential_spec() const;
};

/// Parses and validates a JSON run configuration. Empty or whitespace-only
/// text yields the defaults. Throws ConfigError listing every problem found.
RunConfig validate_config(std::string_view text);

/// Checks field ranges of an already-built config; returns the problems found.
std::vector<std::string> config_problems(const RunConfig& config);

std::string to_string(PotentialKind kind);

/// Expands a descending start/stop/step sweep, e.g. 1.0, 0.95, ..., 0.7.
std::vector<double> alpha_range(double start, double stop, double step);

}  // namespace frackappa
