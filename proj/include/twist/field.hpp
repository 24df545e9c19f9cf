#pragma once

#include <complex>
#include <string>
#include <vector>

#include "twist/vec2.hpp"

namespace twist {

/// Uniform sample grid; sample (i, j) sits at origin + (i dx, j dy), row-major in j.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  Vec2 origin{};

  double x(int i) const { return origin.x + i * dx; }
  double y(int j) const { return origin.y + j * dy; }
  size_t size() const { return static_cast<size_t>(nx) * static_cast<size_t>(ny); }
  size_t index(int i, int j) const { return static_cast<size_t>(j) * nx + i; }
  /// Square grid of n x n samples with spacing d centred on `center`.
  static Grid2D centered(int n, double d, Vec2 center = {});
};

struct FieldMetadata {
  double z = 0.0;
  double wavelength = 0.0;
  std::string normalization;
  std::string carrier;
  std::vector<std::string> warnings;
  double total_drift = 0.0;
  std::vector<double> flux_history;
};

class ComplexField2D {
 public:
  ComplexField2D() = default;
  explicit ComplexField2D(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }
  double dx() const { return grid_.dx; }
  double dy() const { return grid_.dy; }
  Vec2 origin() const { return grid_.origin; }
  double x(int i) const { return grid_.x(i); }
  double y(int j) const { return grid_.y(j); }

  std::complex<double>& at(int i, int j) { return values_[grid_.index(i, j)]; }
  const std::complex<double>& at(int i, int j) const { return values_[grid_.index(i, j)]; }
  std::vector<std::complex<double>>& values() { return values_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  /// Sum |u|^2 dx dy.
  double flux() const;

  FieldMetadata meta;

 private:
  Grid2D grid_;
  std::vector<std::complex<double>> values_;
};

/// Real-valued map on a grid (|psi|^2 densities, expected counts, ...).
struct IntensityMap {
  Grid2D grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[grid.index(i, j)]; }
  double max() const;
  double sum() const;
};

IntensityMap intensity(const ComplexField2D& field);

/// Detector plane at distance z with inclusive sample endpoints.
struct ObservationPlane {
  double z;
  double x_min, x_max;
  double y_min, y_max;
  int nx, ny;

  /// Throws GeometryError on a degenerate plane.
  void validate() const;
  Grid2D grid() const;
  /// Square plane [-half, half]^2 with n x n samples.
  static ObservationPlane square(double z, double half_width, int n);
};

/// Complex bilinear interpolation; zero outside the sampled footprint.
std::complex<double> bilinear(const ComplexField2D& field, double x, double y);
double bilinear(const IntensityMap& map, double x, double y);
ComplexField2D resample(const ComplexField2D& field, const Grid2D& grid);
IntensityMap resample(const IntensityMap& map, const Grid2D& grid);

}  // namespace twist
