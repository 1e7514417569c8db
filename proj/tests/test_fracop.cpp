#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "frackappa/error.hpp"
#include "frackappa/fracop.hpp"

using namespace frackappa;

namespace {

// (-1)^k binom(beta, k) = Gamma(k - beta) / (Gamma(-beta) Gamma(k + 1)), summed directly.
double gamma_weight(double beta, int k) {
  if (k == 0) return 1.0;
  if (k == 1) return -beta;
  // k - beta > 0 for k >= 2, so the log-gamma form is safe.
  return std::exp(std::lgamma(k - beta) - std::lgamma(k + 1.0)) / std::tgamma(-beta);
}

// Exact value of -(-Laplacian)^{beta/2} exp(-x^2) at x = 0, from the Fourier
// representation: -(1/pi) * integral_0^inf k^beta sqrt(pi) e^{-k^2/4} dk.
double riesz_gaussian_at_origin(double beta) {
  return -std::pow(2.0, beta) * std::tgamma((beta + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
}

}  // namespace

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(Grid1D(0.0, 0.0, 10), ParameterError);
  CHECK_THROWS_AS(Grid1D(0.0, 0.1, 7), ParameterError);
  const auto g = Grid1D::hard_wall(-1.0, 10.0, 9);
  CHECK(g.dx() == doctest::Approx(1.0));
  CHECK(g.x(0) == doctest::Approx(0.0));
  CHECK(g.right_wall() == doctest::Approx(9.0));
  const auto c = Grid1D::centered(16.0, 159);
  CHECK(c.x(79) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(FractionalOrder(0.5), ParameterError);
  CHECK_THROWS_AS(FractionalOrder(1.01), ParameterError);
  CHECK(FractionalOrder(0.8).beta() == doctest::Approx(1.6));
}

TEST_CASE("gl_weights") {
  SUBCASE("integer order") {
    const auto w = gl_weights(2.0, 3);
    REQUIRE(w.size() == 4);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == -2.0);
    CHECK(w[2] == 1.0);
    CHECK(w[3] == 0.0);
  }
  SUBCASE("recurrence arithmetic") {
    const auto w = gl_weights(1.5, 2);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == -1.5);
    CHECK(w[2] == doctest::Approx(0.375));
  }
  SUBCASE("partial sums vanish against the gamma-function oracle") {
    const auto w = gl_weights(1.8, 2000);
    double sum = 0.0, oracle = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      sum += w[static_cast<std::size_t>(k)];
      oracle += gamma_weight(1.8, k);
      if (k < 50) CHECK(w[static_cast<std::size_t>(k)] == doctest::Approx(gamma_weight(1.8, k)).epsilon(1e-12));
    }
    CHECK(std::abs(oracle) < 1e-2);
    CHECK(sum == doctest::Approx(oracle).epsilon(1e-8));
  }
  SUBCASE("sign pattern and monotone partial sums") {
    for (double beta : {1.05, 1.3, 1.7, 1.95}) {
      const auto w = gl_weights(beta, 500);
      CHECK(w[1] == doctest::Approx(-beta));
      double partial = w[0] + w[1];
      for (std::size_t k = 2; k < w.size(); ++k) {
        CHECK(w[k] > 0.0);
        const double next = partial + w[k];
        CHECK(std::abs(next) < std::abs(partial));
        partial = next;
      }
    }
  }
  CHECK_THROWS_AS(gl_weights(1.0, 5), ParameterError);
  CHECK_THROWS_AS(gl_weights(2.2, 5), ParameterError);
  CHECK_THROWS_AS(gl_weights(1.5, 1), ParameterError);
}

TEST_CASE("left and right matrices") {
  const Grid1D grid(0.0, 1.0, 12);
  for (double beta : {1.3, 1.75, 2.0}) {
    const auto l = left_matrix(grid, beta);
    const auto r = right_matrix(grid, beta);
    CHECK(l.kind == OperatorKind::left);
    CHECK(r.kind == OperatorKind::right);
    CHECK((l.entries.transpose() - r.entries).cwiseAbs().maxCoeff() == 0.0);
    // Lower Hessenberg: nothing above the first superdiagonal.
    for (int i = 0; i < 12; ++i) {
      for (int j = i + 2; j < 12; ++j) CHECK(l.entries(i, j) == 0.0);
    }
  }

  SUBCASE("beta = 2 reproduces the second difference of x^2") {
    const double length = 3.0;
    const auto g = Grid1D::hard_wall(0.0, length, 59);
    Eigen::VectorXd f(59);
    for (int i = 0; i < 59; ++i) f(i) = g.x(static_cast<std::size_t>(i)) * g.x(static_cast<std::size_t>(i));
    const Eigen::VectorXd dl = left_matrix(g, 2.0).entries * f;
    const Eigen::VectorXd dr = right_matrix(g, 2.0).entries * f;
    for (int i = 1; i < 58; ++i) {
      CHECK(dl(i) == doctest::Approx(2.0).epsilon(1e-9));
      CHECK(dr(i) == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("riesz_matrix") {
  SUBCASE("beta = 2 is the tridiagonal [1, -2, 1] stencil exactly") {
    const Grid1D grid(0.0, 1.0, 8);
    const auto d = riesz_matrix(grid, 2.0).entries;
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        const double expected = i == j ? -2.0 : (std::abs(i - j) == 1 ? 1.0 : 0.0);
        CHECK(d(i, j) == expected);
      }
    }
  }

  SUBCASE("symmetric for sampled orders") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> beta_dist(1.0 + 1e-6, 2.0);
    const Grid1D grid(-2.0, 0.05, 80);
    for (int trial = 0; trial < 20; ++trial) {
      const auto d = riesz_matrix(grid, beta_dist(rng)).entries;
      CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("negative semidefinite, eigen-decomposition oracle") {
    for (std::size_t n : {50u, 200u, 400u}) {
      const Grid1D grid(0.0, 10.0 / static_cast<double>(n), n);
      for (double beta : {1.05, 1.6, 1.99}) {
        const auto d = riesz_matrix(grid, beta).entries;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().maxCoeff() <= 1e-10 * d.norm());
      }
    }
  }

  SUBCASE("converges on a Gaussian with observed order >= 1") {
    // Grids of 159, 319 and 639 points on (-8, 8) all sample x = 0.
    const double beta = 1.5;
    const double exact = riesz_gaussian_at_origin(beta);
    double reference_error = 0.0;
    std::vector<double> values;
    for (std::size_t n : {159u, 319u, 639u}) {
      const auto grid = Grid1D::centered(16.0, n);
      Eigen::VectorXd f(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) f(static_cast<Eigen::Index>(i)) = std::exp(-grid.x(i) * grid.x(i));
      const Eigen::VectorXd df = riesz_matrix(grid, beta).entries * f;
      values.push_back(df(static_cast<Eigen::Index>((n - 1) / 2)));
    }
    const double reference = values[2];
    const double order = std::log2(std::abs(values[0] - reference) / std::abs(values[1] - reference));
    CHECK(order >= 1.0);
    // First-order Richardson extrapolation from the two finest grids.
    const double extrapolated = 2.0 * values[2] - values[1];
    reference_error = std::abs(extrapolated - exact) / std::abs(exact);
    CHECK(std::abs(values[2] - exact) / std::abs(exact) < 2e-2);
    CHECK(reference_error < 2e-3);
    CHECK(riesz_gaussian_at_origin(2.0) == doctest::Approx(-2.0));
  }
}

TEST_CASE("inner_product") {
  const double length = 5.0;
  const auto grid = Grid1D::hard_wall(0.0, length, 399);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(399);
  CHECK(inner_product(as_span(ones), as_span(ones), grid) == doctest::Approx(399 * grid.dx()));

  Eigen::VectorXd s(399);
  for (int i = 0; i < 399; ++i) s(i) = std::sin(std::numbers::pi * grid.x(static_cast<std::size_t>(i)) / length);
  CHECK(inner_product(as_span(s), as_span(s), grid) == doctest::Approx(length / 2).epsilon(grid.dx() * grid.dx()));

  Eigen::VectorXd shorter(10);
  CHECK_THROWS_AS(inner_product(as_span(shorter), as_span(ones), grid), ParameterError);
}
