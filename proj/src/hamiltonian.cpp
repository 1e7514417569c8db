#include "frackappa/hamiltonian.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "frackappa/error.hpp"
#include "frackappa/fracop.hpp"

namespace frackappa {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_tridiagonal(const Eigen::MatrixXd& h) {
  const auto n = h.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 2; i < n; ++i) {
      if (h(i, j) != 0.0) return false;
    }
  }
  return true;
}

void normalize_and_fix_sign(Eigen::MatrixXd& states, double dx) {
  for (Eigen::Index k = 0; k < states.cols(); ++k) {
    auto col = states.col(k);
    col /= std::sqrt(col.squaredNorm() * dx);
    const double threshold = 1e-6 * col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > threshold) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
}

struct Eigenpairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Eigenpairs lowest_eigenpairs(const Eigen::MatrixXd& h, std::size_t count, bool want_vectors) {
  const auto n = static_cast<lapack_int>(h.rows());
  const auto k = static_cast<lapack_int>(count);
  const char jobz = want_vectors ? 'V' : 'N';
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(want_vectors ? n : 1, want_vectors ? k : 1);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max(k, lapack_int{1})));
  lapack_int found = 0;
  lapack_int info = 0;
  const lapack_int ldz = want_vectors ? n : 1;

  if (is_tridiagonal(h)) {
    Eigen::VectorXd diag = h.diagonal();
    Eigen::VectorXd off(std::max<lapack_int>(n - 1, 1));
    for (lapack_int i = 0; i + 1 < n; ++i) off(i) = h(i + 1, i);
    info = LAPACKE_dstevr(LAPACK_COL_MAJOR, jobz, 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, k,
                          0.0, &found, w.data(), z.data(), ldz, support.data());
  } else {
    Eigen::MatrixXd work = h;
    info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, jobz, 'I', 'L', n, work.data(), n, 0.0, 0.0, 1, k, 0.0,
                          &found, w.data(), z.data(), ldz, support.data());
  }
  if (info != 0 || found != k) {
    throw NumericError("symmetric eigensolver failed: info=" + std::to_string(info) + ", found " +
                       std::to_string(found) + " of " + std::to_string(k) +
                       " requested eigenpairs (n=" + std::to_string(n) + ")");
  }
  if (!w.head(k).allFinite() || (want_vectors && !z.allFinite())) {
    throw NumericError("symmetric eigensolver returned non-finite values (n=" + std::to_string(n) +
                       "); if OpenBLAS runs Cooperlake kernels, set OPENBLAS_CORETYPE=SkylakeX");
  }
  return {w.head(k), std::move(z)};
}

}  // namespace

void PhysicalConstants::validate() const {
  if (!(m > 0.0 && e > 0.0 && hbar > 0.0 && c > 0.0)) {
    throw ParameterError("physical constants m, e, hbar, c must all be positive");
  }
}

double canonical_position(double x, double alpha, const PhysicalConstants& consts) {
  if (x == 0.0) return 0.0;
  const double scale = std::pow(consts.compton_length(), 1.0 - alpha);
  const double magnitude = scale * std::pow(std::abs(x), alpha);
  return x > 0.0 ? magnitude : -magnitude;
}

double fractional_offset(double b, double alpha, const PhysicalConstants& consts) {
  return canonical_position(b, alpha, consts);
}

Eigen::VectorXd canonical_positions(const Grid1D& grid, double alpha, const PhysicalConstants& consts) {
  Eigen::VectorXd xh(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    xh(static_cast<Eigen::Index>(i)) = canonical_position(grid.x(i), alpha, consts);
  }
  return xh;
}

double fractional_length_scale(double alpha, const PhysicalConstants& consts) {
  return std::pow(consts.compton_length(), 1.0 - 1.0 / alpha);
}

bool has_wall(const PotentialSpec& spec) {
  return std::holds_alternative<Cqho>(spec) || std::holds_alternative<SlantWell>(spec);
}

double wall_offset(const PotentialSpec& spec) {
  return std::visit(overloaded{[](const Cqho& p) { return p.b; },
                               [](const SlantWell& p) { return p.b; },
                               [](const auto&) { return 0.0; }},
                    spec);
}

PotentialSpec with_wall_offset(const PotentialSpec& spec, double b) {
  PotentialSpec out = spec;
  std::visit(overloaded{[b](Cqho& p) { p.b = b; }, [b](SlantWell& p) { p.b = b; },
                        [](auto&) {}},
             out);
  return out;
}

Eigen::VectorXd potential_on_grid(const PotentialSpec& spec, const Grid1D& grid, double alpha,
                                  const PhysicalConstants& consts) {
  FractionalOrder{alpha};
  const auto n = static_cast<Eigen::Index>(grid.size());

  const auto check_wall = [&](double b) {
    if (!(grid.x_min() > b)) {
      throw ParameterError("grid starts at x=" + std::to_string(grid.x_min()) +
                           ", inside the forbidden region left of the wall at b=" +
                           std::to_string(b));
    }
  };

  return std::visit(
      overloaded{
          [&](const Cqho& p) -> Eigen::VectorXd {
            if (!(p.omega > 0.0)) throw ParameterError("CQHO angular frequency must be positive");
            check_wall(p.b);
            const double bh = fractional_offset(p.b, alpha, consts);
            const Eigen::VectorXd xh = canonical_positions(grid, alpha, consts);
            return (0.5 * consts.m * p.omega * p.omega) * (xh.array() - bh).square().matrix();
          },
          [&](const SlantWell& p) -> Eigen::VectorXd {
            if (!(p.slope > 0.0)) throw ParameterError("slant-well slope must be positive");
            check_wall(p.b);
            const double bh = fractional_offset(p.b, alpha, consts);
            const Eigen::VectorXd xh = canonical_positions(grid, alpha, consts);
            return p.slope * (xh.array() - bh).matrix();
          },
          [&](const SymmetricHo& p) -> Eigen::VectorXd {
            if (!(p.omega > 0.0)) throw ParameterError("oscillator angular frequency must be positive");
            const Eigen::VectorXd xh = canonical_positions(grid, alpha, consts);
            return (0.5 * consts.m * p.omega * p.omega) * xh.array().square().matrix();
          },
          [&](const Tabulated& p) -> Eigen::VectorXd {
            if (static_cast<Eigen::Index>(p.samples.size()) != n) {
              throw ParameterError("tabulated potential has " + std::to_string(p.samples.size()) +
                                   " samples for a grid of " + std::to_string(n));
            }
            return Eigen::Map<const Eigen::VectorXd>(p.samples.data(), n);
          }},
      spec);
}

double kinetic_prefactor(double alpha, const PhysicalConstants& consts) {
  // Written so that alpha = 1 yields hbar^2/2m without rounding from c.
  return consts.hbar * consts.hbar / (2.0 * consts.m) *
         std::pow(consts.compton_length(), 2.0 * alpha - 2.0);
}

Eigen::MatrixXd kinetic_matrix(const Grid1D& grid, double alpha, const PhysicalConstants& consts) {
  const FractionalOrder order(alpha);
  auto d = riesz_matrix(grid, order.beta());
  d.entries *= -kinetic_prefactor(alpha, consts);
  return std::move(d.entries);
}

Eigen::MatrixXd assemble(const Grid1D& grid, double alpha, const Eigen::VectorXd& potential,
                         const PhysicalConstants& consts) {
  if (potential.size() != static_cast<Eigen::Index>(grid.size())) {
    throw ParameterError("potential has " + std::to_string(potential.size()) +
                         " samples for a grid of " + std::to_string(grid.size()));
  }
  Eigen::MatrixXd h = kinetic_matrix(grid, alpha, consts);
  h.diagonal() += potential;
  return h;
}

Spectrum solve(const Eigen::MatrixXd& hamiltonian, std::size_t k_states, const Grid1D& grid,
               double alpha) {
  const auto n = static_cast<std::size_t>(hamiltonian.rows());
  if (hamiltonian.cols() != hamiltonian.rows() || n != grid.size()) {
    throw ParameterError("Hamiltonian shape does not match the grid");
  }
  if (k_states == 0 || k_states > n / 4) {
    throw ParameterError("requested " + std::to_string(k_states) +
                         " states; must be between 1 and n/4 = " + std::to_string(n / 4));
  }
  auto pairs = lowest_eigenpairs(hamiltonian, k_states, true);
  for (Eigen::Index k = 1; k < pairs.values.size(); ++k) {
    if (!(pairs.values(k) > pairs.values(k - 1))) {
      throw NumericError("eigenvalues " + std::to_string(k - 1) + " and " + std::to_string(k) +
                         " are degenerate or out of order");
    }
  }
  normalize_and_fix_sign(pairs.vectors, grid.dx());
  return Spectrum{alpha, grid, std::move(pairs.values), std::move(pairs.vectors)};
}

double ground_energy(const Eigen::MatrixXd& hamiltonian) {
  return lowest_eigenpairs(hamiltonian, 1, false).values(0);
}

Grid1D grid_for(const PotentialSpec& spec, const GridPolicy& policy) {
  if (has_wall(spec)) return Grid1D::hard_wall(wall_offset(spec), policy.width, policy.n);
  return Grid1D::centered(policy.width, policy.n);
}

GridPolicy scaled_policy(std::size_t n, double width, double alpha, const PhysicalConstants& consts) {
  return {n, width * fractional_length_scale(alpha, consts)};
}

Eigen::MatrixXd System::hamiltonian() const {
  consts.validate();
  const Grid1D g = grid();
  return assemble(g, alpha, potential_on_grid(potential, g, alpha, consts), consts);
}

Spectrum System::spectrum(std::size_t k_states) const {
  return solve(hamiltonian(), k_states, grid(), alpha);
}

double canonical_expectation(const Spectrum& spectrum, std::size_t k, const PhysicalConstants& consts) {
  const Eigen::VectorXd xh = canonical_positions(spectrum.grid, spectrum.alpha, consts);
  const Eigen::VectorXd psi = spectrum.state(k);
  const Eigen::VectorXd weighted = xh.cwiseProduct(psi);
  return inner_product(as_span(psi), as_span(weighted), spectrum.grid);
}

CalibrationResult calibrate_offset(const PotentialSpec& spec, const GridPolicy& policy, double alpha,
                                   const PhysicalConstants& consts, const CalibrationOptions& options) {
  if (!(options.tol > 0.0)) throw ParameterError("calibration tolerance must be positive");

  const auto evaluate = [&](double b) {
    System system{with_wall_offset(spec, b), policy, alpha, consts};
    Spectrum s = system.spectrum(options.k_states);
    const double g = canonical_expectation(s, 0, consts);
    return std::pair{std::move(s), g};
  };

  double b0 = wall_offset(spec);
  const GridPolicy coarse{policy.n / 2, policy.width};
  if (has_wall(spec) && options.coarse_levels > 0 && coarse.n >= 64) {
    CalibrationOptions seed = options;
    seed.k_states = 1;
    seed.coarse_levels = options.coarse_levels - 1;
    b0 = calibrate_offset(spec, coarse, alpha, consts, seed).b;
  }
  auto [s0, g0] = evaluate(b0);
  if (!has_wall(spec) || std::abs(g0) < options.tol) {
    return CalibrationResult{b0, std::move(s0), 0, g0};
  }

  double b1 = b0 - g0;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    auto [s1, g1] = evaluate(b1);
    if (std::abs(g1) < options.tol) return CalibrationResult{b1, std::move(s1), iter, g1};
    if (g1 == g0) {
      throw CalibrationError("offset calibration stalled: <0|xh|0> unchanged between iterates",
                             g1, b1);
    }
    double step = -g1 * (b1 - b0) / (g1 - g0);
    // Keep iterates inside a box width of the current wall.
    step = std::clamp(step, -0.5 * policy.width, 0.5 * policy.width);
    b0 = b1;
    g0 = g1;
    b1 = b1 + step;
  }
  throw CalibrationError("offset calibration did not converge in " +
                             std::to_string(options.max_iter) + " iterations; last <0|xh|0> = " +
                             std::to_string(g0),
                         g0, b0);
}

}  // namespace frackappa
