#include "twist/detector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "twist/constants.hpp"
#include "twist/errors.hpp"

namespace twist {

namespace {

double overlap(double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); }

}  // namespace

DetectorImage bin_field(const IntensityMap& intensity, double pixel_pitch, const Window& w) {
  const Grid2D& g = intensity.grid;
  if (!(pixel_pitch > 0.0)) throw DomainError("pixel pitch must be positive");
  if (pixel_pitch < std::max(g.dx, g.dy) * (1.0 - 1e-12))
    throw PreconditionError("pixel pitch must not be finer than the field sampling");
  if (!(w.x_max > w.x_min) || !(w.y_max > w.y_min)) throw GeometryError("detector window is degenerate");
  // footprint of the sample cells
  const double fx0 = g.x(0) - 0.5 * g.dx, fx1 = g.x(g.nx - 1) + 0.5 * g.dx;
  const double fy0 = g.y(0) - 0.5 * g.dy, fy1 = g.y(g.ny - 1) + 0.5 * g.dy;
  const double tol = 1e-9 * std::max(fx1 - fx0, fy1 - fy0);
  if (w.x_min < fx0 - tol || w.x_max > fx1 + tol || w.y_min < fy0 - tol || w.y_max > fy1 + tol)
    throw GeometryError("detector window lies outside the field footprint");

  DetectorImage img;
  img.pixel_pitch = pixel_pitch;
  img.origin = {w.x_min, w.y_min};
  img.nx = static_cast<int>(std::ceil((w.x_max - w.x_min) / pixel_pitch - 1e-9));
  img.ny = static_cast<int>(std::ceil((w.y_max - w.y_min) / pixel_pitch - 1e-9));
  img.P.assign(static_cast<size_t>(img.nx) * img.ny, 0.0);

  for (int j = 0; j < g.ny; ++j) {
    const double cy0 = g.y(j) - 0.5 * g.dy, cy1 = cy0 + g.dy;
    const double sy0 = std::max(cy0, w.y_min), sy1 = std::min(cy1, w.y_max);
    if (sy1 <= sy0) continue;
    const int by0 = std::max(0, static_cast<int>(std::floor((sy0 - w.y_min) / pixel_pitch)));
    const int by1 = std::min(img.ny - 1, static_cast<int>(std::floor((sy1 - w.y_min) / pixel_pitch)));
    for (int i = 0; i < g.nx; ++i) {
      const double v = intensity.at(i, j);
      if (v == 0.0) continue;
      const double cx0 = g.x(i) - 0.5 * g.dx, cx1 = cx0 + g.dx;
      const double sx0 = std::max(cx0, w.x_min), sx1 = std::min(cx1, w.x_max);
      if (sx1 <= sx0) continue;
      const int bx0 = std::max(0, static_cast<int>(std::floor((sx0 - w.x_min) / pixel_pitch)));
      const int bx1 = std::min(img.nx - 1, static_cast<int>(std::floor((sx1 - w.x_min) / pixel_pitch)));
      for (int by = by0; by <= by1; ++by) {
        const double b0 = w.y_min + by * pixel_pitch;
        const double oy = overlap(sy0, sy1, b0, std::min(b0 + pixel_pitch, w.y_max));
        if (oy == 0.0) continue;
        for (int bx = bx0; bx <= bx1; ++bx) {
          const double a0 = w.x_min + bx * pixel_pitch;
          const double ox = overlap(sx0, sx1, a0, std::min(a0 + pixel_pitch, w.x_max));
          img.P[static_cast<size_t>(by) * img.nx + bx] += v * ox * oy;
        }
      }
    }
  }
  double s = 0.0;
  for (double p : img.P) s += p;
  img.F_det = s;
  return img;
}

void flag_sampling(DetectorImage& image, double lattice_pitch) {
  image.undersampled = image.pixel_pitch > lattice_pitch / 3.0;
}

double particle_rate(const BeamBudget& b) {
  if (b.Q < 0.0 || b.f_rep < 0.0 || b.eta < 0.0 || b.eta > 1.0 || b.Z < 1 || b.exposure < 0.0)
    throw DomainError("beam budget needs non-negative Q, f_rep, exposure, eta in [0, 1] and Z >= 1");
  return b.eta * b.Q * b.f_rep / (b.Z * constants::e);
}

double total_rate(const BeamBudget& budget, double F_det) { return particle_rate(budget) * F_det; }

std::vector<double> expected_counts(const DetectorImage& image, const BeamBudget& budget) {
  const double scale = particle_rate(budget) * budget.exposure;
  std::vector<double> n(image.P.size());
  std::transform(image.P.begin(), image.P.end(), n.begin(), [scale](double p) { return scale * p; });
  return n;
}

double time_to_counts(double N, double R_tot) {
  if (N < 0.0) throw DomainError("count target must be non-negative");
  if (!(R_tot > 0.0)) throw PreconditionError("zero count rate: the target is never reached");
  return N / R_tot;
}

std::vector<double> poisson_sample(const std::vector<double>& expected, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] <= 0.0) continue;
    std::poisson_distribution<long long> dist(expected[i]);
    out[i] = static_cast<double>(dist(rng));
  }
  return out;
}

}  // namespace twist
