#include "frackappa/grid.hpp"

#include <cmath>
#include <string>

#include "frackappa/error.hpp"

namespace frackappa {

Grid1D::Grid1D(double x_min, double dx, std::size_t n) : x_min_(x_min), dx_(dx), n_(n) {
  if (!std::isfinite(x_min) || !std::isfinite(dx) || !(dx > 0.0)) {
    throw ParameterError("grid spacing must be finite and positive, got dx=" + std::to_string(dx));
  }
  if (n < 8) {
    throw ParameterError("grid needs at least 8 points, got " + std::to_string(n));
  }
}

Grid1D Grid1D::hard_wall(double left_wall, double width, std::size_t n) {
  if (!(width > 0.0)) throw ParameterError("box width must be positive");
  const double dx = width / static_cast<double>(n + 1);
  return Grid1D(left_wall + dx, dx, n);
}

Grid1D Grid1D::centered(double width, std::size_t n) {
  return hard_wall(-0.5 * width, width, n);
}

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) {
    throw ParameterError("fractional order alpha must lie in (0.5, 1], got " + std::to_string(alpha));
  }
}

}  // namespace frackappa
