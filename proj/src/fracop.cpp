#include "frackappa/fracop.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "frackappa/error.hpp"

namespace frackappa {

namespace {

void check_order(double beta) {
  if (!(beta > 1.0 && beta <= 2.0)) {
    throw ParameterError("derivative order beta must lie in (1, 2], got " + std::to_string(beta));
  }
}

// Toeplitz band of the shifted left-sided operator: t[k] multiplies f(x_{i-k+1}).
Eigen::MatrixXd shifted_left(const Grid1D& grid, double beta) {
  check_order(beta);
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto w = gl_weights(beta, static_cast<int>(n));
  const double scale = std::pow(grid.dx(), -beta);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // Column j holds w_{i-j+1} in rows i >= j - 1.
    for (Eigen::Index i = std::max<Eigen::Index>(j - 1, 0); i < n; ++i) {
      m(i, j) = w[static_cast<std::size_t>(i - j + 1)] * scale;
    }
  }
  return m;
}

}  // namespace

std::vector<double> gl_weights(double beta, int count) {
  check_order(beta);
  if (count < 2) throw ParameterError("need at least two Grünwald–Letnikov weights beyond w_0");
  std::vector<double> w(static_cast<std::size_t>(count) + 1);
  w[0] = 1.0;
  for (int k = 1; k <= count; ++k) {
    w[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k - 1)] * (1.0 - (beta + 1.0) / k);
  }
  return w;
}

OperatorMatrix left_matrix(const Grid1D& grid, double beta) {
  return {shifted_left(grid, beta), OperatorKind::left};
}

OperatorMatrix right_matrix(const Grid1D& grid, double beta) {
  return {shifted_left(grid, beta).transpose(), OperatorKind::right};
}

OperatorMatrix riesz_matrix(const Grid1D& grid, double beta) {
  const Eigen::MatrixXd left = shifted_left(grid, beta);
  // cos(pi) rounds to -1 exactly, so beta = 2 gives the plain half sum.
  const double factor = -1.0 / (2.0 * std::cos(std::numbers::pi * beta / 2.0));
  Eigen::MatrixXd d = factor * (left + left.transpose());
  return {std::move(d), OperatorKind::riesz};
}

double inner_product(std::span<const double> f, std::span<const double> g, const Grid1D& grid) {
  if (f.size() != g.size() || f.size() != grid.size()) {
    throw ParameterError("inner_product: vector lengths " + std::to_string(f.size()) + " and " +
                         std::to_string(g.size()) + " do not match grid size " +
                         std::to_string(grid.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum * grid.dx();
}

}  // namespace frackappa
