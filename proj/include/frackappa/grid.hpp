#pragma once

#include <cstddef>

namespace frackappa {

/// Uniform grid on the open interior of a hard-wall box. Samples are
/// x_i = x_min + i*dx for i in [0, n); wavefunctions vanish at
/// x_min - dx and x_min + n*dx and beyond.
class Grid1D {
 public:
  Grid1D(double x_min, double dx, std::size_t n);

  /// Interior grid of a box with walls at `left_wall` and `left_wall + width`.
  static Grid1D hard_wall(double left_wall, double width, std::size_t n);
  /// Interior grid of the box (-width/2, width/2); symmetric about the origin.
  static Grid1D centered(double width, std::size_t n);

  double x_min() const noexcept { return x_min_; }
  double dx() const noexcept { return dx_; }
  std::size_t size() const noexcept { return n_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }
  double left_wall() const noexcept { return x_min_ - dx_; }
  double right_wall() const noexcept { return x_min_ + static_cast<double>(n_) * dx_; }

 private:
  double x_min_;
  double dx_;
  std::size_t n_;
};

/// Space-fractional order alpha in (0.5, 1]; the kinetic derivative has order beta = 2*alpha.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return 2.0 * alpha_; }

 private:
  double alpha_;
};

}  // namespace frackappa
