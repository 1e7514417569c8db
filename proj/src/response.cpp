#include "frackappa/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frackappa/error.hpp"
#include "frackappa/fracop.hpp"
#include "frackappa/threelevel.hpp"

namespace frackappa {

namespace {

Eigen::VectorXd fractional_coordinate(const Grid1D& grid, double alpha) {
  Eigen::VectorXd xi(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double m = std::pow(std::abs(x), alpha);
    xi(static_cast<Eigen::Index>(i)) = x > 0.0 ? m : (x < 0.0 ? -m : 0.0);
  }
  return xi;
}

void check_sum_size(const TransitionTable& table, const Eigen::VectorXd& energies, std::size_t k_sum) {
  if (k_sum < 2 || k_sum > table.count() || static_cast<Eigen::Index>(k_sum) > energies.size()) {
    throw ParameterError("state-sum size " + std::to_string(k_sum) + " must lie in [2, " +
                         std::to_string(std::min<std::size_t>(table.count(), energies.size())) + "]");
  }
}

double trk_sum(const Spectrum& spectrum, const TransitionTable& table, std::size_t k, std::size_t l,
               std::size_t states) {
  const auto& x = table.moments;
  const auto& e = spectrum.energies;
  const auto ki = static_cast<Eigen::Index>(k);
  const auto li = static_cast<Eigen::Index>(l);
  const double mid = 0.5 * (e(ki) + e(li));
  double sum = 0.0;
  for (Eigen::Index q = 0; q < static_cast<Eigen::Index>(states); ++q) {
    sum += x(ki, q) * x(q, li) * (e(q) - mid);
  }
  return sum;
}

}  // namespace

double TransitionTable::bar(std::size_t i, std::size_t j) const {
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  return i == j ? moments(ii, jj) - moments(0, 0) : moments(ii, jj);
}

TransitionTable transition_moments(const Spectrum& spectrum, const PhysicalConstants& consts) {
  const Eigen::VectorXd xh = canonical_positions(spectrum.grid, spectrum.alpha, consts);
  const Eigen::MatrixXd weighted = xh.asDiagonal() * spectrum.states;
  Eigen::MatrixXd m = spectrum.states.transpose() * weighted * spectrum.grid.dx();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  if (asym > 1e-8 * scale) {
    throw NumericError("transition moments are not symmetric: max asymmetry " + std::to_string(asym));
  }
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  return {std::move(sym)};
}

LambdaMatrix lambda_matrix(const Spectrum& spectrum) {
  const Grid1D& grid = spectrum.grid;
  const FractionalOrder order(spectrum.alpha);
  Eigen::MatrixXd op = riesz_matrix(grid, order.beta()).entries;
  const Eigen::VectorXd xi = fractional_coordinate(grid, order.alpha());
  const auto n = op.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = xi(i) - xi(j);
      op(i, j) *= 0.5 * d * d;
    }
  }
  Eigen::MatrixXd values = spectrum.states.transpose() * (op * spectrum.states) * grid.dx();
  return {std::move(values)};
}

TrkResidual trk_residual(const Spectrum& spectrum, const TransitionTable& table,
                         const LambdaMatrix& lambda, std::size_t k, std::size_t l,
                         const PhysicalConstants& consts) {
  const std::size_t states = std::min(table.count(), spectrum.count());
  if (k >= states || l >= states) throw ParameterError("TRK element index beyond retained states");
  const double unit = consts.hbar * consts.hbar / (2.0 * consts.m);
  const double target = unit * lambda.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  const double residual = std::abs(trk_sum(spectrum, table, k, l, states) - target) / unit;

  double tail_change = std::numeric_limits<double>::infinity();
  if (states >= std::max(k, l) + 11) {
    const double shorter = std::abs(trk_sum(spectrum, table, k, l, states - 10) - target) / unit;
    tail_change = std::abs(residual - shorter);
  }
  return {residual, tail_change, tail_change < 1e-3};
}

double sos_kappa1(const TransitionTable& table, const Eigen::VectorXd& energies, std::size_t k_sum,
                  const PhysicalConstants& consts) {
  check_sum_size(table, energies, k_sum);
  const auto& x = table.moments;
  double sum = 0.0;
  for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(k_sum); ++k) {
    sum += x(0, k) * x(k, 0) / (energies(k) - energies(0));
  }
  return 2.0 * consts.e * consts.e * sum;
}

double sos_kappa2(const TransitionTable& table, const Eigen::VectorXd& energies, std::size_t k_sum,
                  const PhysicalConstants& consts) {
  check_sum_size(table, energies, k_sum);
  const auto& x = table.moments;
  double sum = 0.0;
  for (std::size_t k = 1; k < k_sum; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    const double ek0 = energies(ki) - energies(0);
    for (std::size_t l = 1; l < k_sum; ++l) {
      const auto li = static_cast<Eigen::Index>(l);
      sum += x(0, ki) * table.bar(k, l) * x(li, 0) / (ek0 * (energies(li) - energies(0)));
    }
  }
  return 3.0 * std::pow(consts.e, 3) * sum;
}

std::vector<double> field_energies(const System& system, const std::vector<double>& fields) {
  const Eigen::MatrixXd h0 = system.hamiltonian();
  const Eigen::VectorXd coupling =
      system.consts.e * canonical_positions(system.grid(), system.alpha, system.consts);
  std::vector<double> energies;
  energies.reserve(fields.size());
  for (double f : fields) {
    Eigen::MatrixXd h = h0;
    h.diagonal() += f * coupling;
    energies.push_back(ground_energy(h));
  }
  return energies;
}

std::vector<double> fit_polynomial(const std::vector<double>& fields, const std::vector<double>& energies) {
  const auto count = static_cast<Eigen::Index>(fields.size());
  if (count < 5 || fields.size() != energies.size()) {
    throw ParameterError("field fit needs at least five points and one energy per field");
  }
  // Work in t = F / h so the Vandermonde matrix stays well scaled.
  double h = 0.0;
  for (double f : fields) h = std::max(h, std::abs(f));
  h /= static_cast<double>((count - 1) / 2);
  if (!(h > 0.0)) throw ParameterError("field points must span a nonzero range");
  Eigen::MatrixXd v(count, count);
  Eigen::VectorXd rhs(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double t = fields[static_cast<std::size_t>(i)] / h;
    double p = 1.0;
    for (Eigen::Index j = 0; j < count; ++j, p *= t) v(i, j) = p;
    rhs(i) = energies[static_cast<std::size_t>(i)];
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!(lu.rcond() > 1e-10)) {
    throw NumericError("field fit is ill-conditioned; choose a different field step");
  }
  const Eigen::VectorXd scaled = lu.solve(rhs);
  std::vector<double> c(static_cast<std::size_t>(count));
  double hp = 1.0;
  for (Eigen::Index j = 0; j < count; ++j, hp *= h) c[static_cast<std::size_t>(j)] = scaled(j) / hp;
  return c;
}

FiniteFieldResult finite_field_kappa(const System& system, const FiniteFieldOptions& options) {
  if (!(options.step > 0.0)) throw ParameterError("finite-field step must be positive");
  const Eigen::MatrixXd h0 = system.hamiltonian();
  const double norm = h0.cwiseAbs().rowwise().sum().maxCoeff();
  const double noise = options.noise_ulps * std::numeric_limits<double>::epsilon() * norm;

  const double e_zero = field_energies(system, {0.0}).front();
  double h = options.step;
  for (int attempt = 0; attempt <= options.max_adjust; ++attempt) {
    std::vector<double> fields;
    for (int j = -3; j <= 3; ++j) fields.push_back(j * h);
    std::vector<double> shifted = fields;
    shifted.erase(shifted.begin() + 3);
    shifted = field_energies(system, shifted);
    std::vector<double> energies(shifted.begin(), shifted.begin() + 3);
    energies.push_back(e_zero);
    energies.insert(energies.end(), shifted.begin() + 3, shifted.end());

    const std::vector<double> c = fit_polynomial(fields, energies);
    const double quadratic_shift = std::abs(c[2]) * h * h;
    const double top_shift = std::abs(c[6]) * std::pow(h, 6);
    if (quadratic_shift < options.signal_to_noise * noise) {
      // Jump to the step the current curvature estimate asks for.
      const double wanted = c[2] != 0.0 ? 1.25 * std::sqrt(options.signal_to_noise * noise / std::abs(c[2])) : 0.0;
      h = std::max(2.0 * h, wanted);
      continue;
    }
    if (top_shift > 1e-2 * quadratic_shift) {
      h *= 0.5;
      continue;
    }
    return {-2.0 * c[2], 3.0 * c[3], h, fields, energies};
  }
  throw NumericError("finite-field step could not be tuned: quadratic energy shift stays below " +
                     std::to_string(options.signal_to_noise) + "x the noise floor " +
                     std::to_string(noise) + "; try a different step");
}

double relative_change(double a, double b, double floor) {
  return std::abs(b - a) / std::max({std::abs(a), std::abs(b), floor});
}

bool ConvergenceDeltas::converged(double tol) const {
  return kappa1_states < tol && kappa2_states < tol && kappa1_grid < tol && kappa2_grid < tol;
}

ConvergenceDeltas convergence_report(const System& system, const Spectrum& spectrum,
                                     std::size_t k_sum) {
  if (spectrum.count() < k_sum + 10) {
    throw ParameterError("convergence report needs k_sum + 10 = " + std::to_string(k_sum + 10) +
                         " states, spectrum holds " + std::to_string(spectrum.count()));
  }
  const auto& consts = system.consts;
  const TransitionTable table = transition_moments(spectrum, consts);
  const double e10 = spectrum.energies(1) - spectrum.energies(0);
  // Null responses are compared on the scale of the alpha -> 1 maxima.
  const double floor1 = 1e-6 * kappa1_max_standard(e10, 1, consts);
  const double floor2 = 1e-6 * kappa2_max_standard(e10, 1, consts);

  const double k1 = sos_kappa1(table, spectrum.energies, k_sum, consts);
  const double k2 = sos_kappa2(table, spectrum.energies, k_sum, consts);
  const double k1_more = sos_kappa1(table, spectrum.energies, k_sum + 10, consts);
  const double k2_more = sos_kappa2(table, spectrum.energies, k_sum + 10, consts);

  System fine = system;
  fine.policy.n = 2 * system.policy.n + 1;
  const Spectrum fine_spectrum = fine.spectrum(k_sum);
  const TransitionTable fine_table = transition_moments(fine_spectrum, consts);
  const double k1_fine = sos_kappa1(fine_table, fine_spectrum.energies, k_sum, consts);
  const double k2_fine = sos_kappa2(fine_table, fine_spectrum.energies, k_sum, consts);

  return {relative_change(k1, k1_more, floor1), relative_change(k2, k2_more, floor2),
          relative_change(k1, k1_fine, floor1), relative_change(k2, k2_fine, floor2)};
}

ResponseReport response_report(const System& system, const Spectrum& spectrum, std::size_t k_sum) {
  const auto& consts = system.consts;
  const TransitionTable table = transition_moments(spectrum, consts);
  const double k1 = sos_kappa1(table, spectrum.energies, k_sum, consts);
  const double k2 = sos_kappa2(table, spectrum.energies, k_sum, consts);
  const double e10 = spectrum.energies(1) - spectrum.energies(0);
  const double e20 = spectrum.energies(2) - spectrum.energies(0);
  const ApparentIntrinsic app = apparent_intrinsic(k1, k2, e10, 1, consts);
  return {k1, k2, app.kappa1, app.kappa2, e10, e20, k_sum,
          convergence_report(system, spectrum, k_sum)};
}

}  // namespace frackappa
