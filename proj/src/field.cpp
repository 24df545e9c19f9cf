#include "twist/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twist/errors.hpp"

namespace twist {

namespace {

// Fractional sample coordinates and the lower-left cell index; false when outside.
bool locate(const Grid2D& g, double x, double y, int& i, int& j, double& fx, double& fy) {
  constexpr double tol = 1e-9;
  double u = (x - g.origin.x) / g.dx, v = (y - g.origin.y) / g.dy;
  if (!(u >= -tol && v >= -tol && u <= g.nx - 1 + tol && v <= g.ny - 1 + tol)) return false;
  u = std::clamp(u, 0.0, g.nx - 1.0);
  v = std::clamp(v, 0.0, g.ny - 1.0);
  i = std::min(static_cast<int>(u), g.nx - 2);
  j = std::min(static_cast<int>(v), g.ny - 2);
  fx = u - i;
  fy = v - j;
  return true;
}

template <class T, class Get>
T bilinear_impl(const Grid2D& g, double x, double y, Get get) {
  int i, j;
  double fx, fy;
  if (g.nx < 2 || g.ny < 2 || !locate(g, x, y, i, j, fx, fy)) return T{};
  return (1 - fx) * (1 - fy) * get(i, j) + fx * (1 - fy) * get(i + 1, j) +
         (1 - fx) * fy * get(i, j + 1) + fx * fy * get(i + 1, j + 1);
}

}  // namespace

Grid2D Grid2D::centered(int n, double d, Vec2 center) {
  const double half = 0.5 * (n - 1) * d;
  return {n, n, d, d, {center.x - half, center.y - half}};
}

ComplexField2D::ComplexField2D(const Grid2D& grid) : grid_(grid), values_(grid.size()) {
  if (grid.nx < 1 || grid.ny < 1 || !(grid.dx > 0.0) || !(grid.dy > 0.0))
    throw GeometryError("field grid needs positive size and spacing");
}

double ComplexField2D::flux() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s * grid_.dx * grid_.dy;
}

double IntensityMap::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double IntensityMap::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

IntensityMap intensity(const ComplexField2D& field) {
  IntensityMap m{field.grid(), std::vector<double>(field.values().size())};
  std::transform(field.values().begin(), field.values().end(), m.values.begin(),
                 [](const std::complex<double>& v) { return std::norm(v); });
  return m;
}

void ObservationPlane::validate() const {
  if (!(z > 0.0)) throw GeometryError("observation plane needs z > 0");
  if (nx < 2 || ny < 2) throw GeometryError("observation plane needs at least 2 x 2 samples");
  if (!(x_max > x_min) || !(y_max > y_min)) throw GeometryError("observation plane ranges are degenerate");
}

Grid2D ObservationPlane::grid() const {
  validate();
  return {nx, ny, (x_max - x_min) / (nx - 1), (y_max - y_min) / (ny - 1), {x_min, y_min}};
}

ObservationPlane ObservationPlane::square(double z, double half_width, int n) {
  return {z, -half_width, half_width, -half_width, half_width, n, n};
}

std::complex<double> bilinear(const ComplexField2D& field, double x, double y) {
  return bilinear_impl<std::complex<double>>(field.grid(), x, y,
                                             [&](int i, int j) { return field.at(i, j); });
}

double bilinear(const IntensityMap& map, double x, double y) {
  return bilinear_impl<double>(map.grid, x, y, [&](int i, int j) { return map.at(i, j); });
}

ComplexField2D resample(const ComplexField2D& field, const Grid2D& grid) {
  ComplexField2D out(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) out.at(i, j) = bilinear(field, grid.x(i), grid.y(j));
  out.meta = field.meta;
  return out;
}

IntensityMap resample(const IntensityMap& map, const Grid2D& grid) {
  IntensityMap out{grid, std::vector<double>(grid.size())};
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) out.values[grid.index(i, j)] = bilinear(map, grid.x(i), grid.y(j));
  return out;
}

}  // namespace twist
