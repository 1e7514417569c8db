#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "frackappa/grid.hpp"

namespace frackappa {

enum class OperatorKind { left, right, riesz };

struct OperatorMatrix {
  Eigen::MatrixXd entries;
  OperatorKind kind;
};

/// Grünwald–Letnikov weights w_0..w_count, w_k = (-1)^k binom(beta, k).
/// Requires 1 < beta <= 2 and count >= 2.
std::vector<double> gl_weights(double beta, int count);

/// Left-sided derivative of order beta in the shifted Grünwald–Letnikov form:
/// entry (i, j) = w_{i-j+1} / dx^beta for j <= i + 1, zero otherwise.
/// Lower Hessenberg Toeplitz; samples outside the box are taken as zero.
OperatorMatrix left_matrix(const Grid1D& grid, double beta);

/// Mirror image of left_matrix; always equal to its transpose.
OperatorMatrix right_matrix(const Grid1D& grid, double beta);

/// Riesz derivative -(-Laplacian)^{beta/2} as -(L + R) / (2 cos(pi beta / 2)).
/// Exactly symmetric and negative semidefinite; the three-point Laplacian at beta = 2.
OperatorMatrix riesz_matrix(const Grid1D& grid, double beta);

/// Rectangle-rule quadrature of f*g over the grid.
double inner_product(std::span<const double> f, std::span<const double> g, const Grid1D& grid);

inline std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace frackappa
