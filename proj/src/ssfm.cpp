#include "twist/ssfm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "twist/errors.hpp"
#include "twist/fft.hpp"

namespace twist {

namespace {

using cplx = std::complex<double>;

double band_fraction(const std::vector<cplx>& spec, int nx, int ny, double band) {
  const double cut_x = (1.0 - band) * nx / 2.0, cut_y = (1.0 - band) * ny / 2.0;
  double total = 0.0, outer = 0.0;
  for (int j = 0; j < ny; ++j) {
    const int my = std::abs(j <= ny / 2 ? j : j - ny);
    for (int i = 0; i < nx; ++i) {
      const int mx = std::abs(i <= nx / 2 ? i : i - nx);
      const double p = std::norm(spec[static_cast<size_t>(j) * nx + i]);
      total += p;
      if (mx > cut_x || my > cut_y) outer += p;
    }
  }
  return total > 0.0 ? outer / total : 0.0;
}

void check_grid(const ComplexField2D& f) {
  if (!is_power_of_two(f.nx()) || !is_power_of_two(f.ny()))
    throw PreconditionError("split-step grid sizes must be powers of two, got " + std::to_string(f.nx()) + " x " +
                            std::to_string(f.ny()));
}

double edge_fraction(const ComplexField2D& f) {
  double peak = 0.0, edge = 0.0;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const double a = std::abs(f.at(i, j));
      peak = std::max(peak, a);
      if (i == 0 || j == 0 || i == f.nx() - 1 || j == f.ny() - 1) edge = std::max(edge, a);
    }
  return peak > 0.0 ? edge / peak : 0.0;
}

void absorb(ComplexField2D& f) {
  auto taper = [](int i, int n) {
    const double band = 0.1 * n;
    const double d = std::min(i, n - 1 - i);
    if (d >= band) return 1.0;
    const double s = 1.0 - d / band;
    return std::exp(-30.0 * std::pow(s, 8));
  };
  for (int j = 0; j < f.ny(); ++j) {
    const double ty = taper(j, f.ny());
    for (int i = 0; i < f.nx(); ++i) f.at(i, j) *= ty * taper(i, f.nx());
  }
}

}  // namespace

double outer_band_fraction(const ComplexField2D& field, double band) {
  std::vector<cplx> spec = field.values();
  Fft2D(field.nx(), field.ny()).forward(spec);
  return band_fraction(spec, field.nx(), field.ny(), band);
}

ComplexField2D drift(const ComplexField2D& field, double dz, double k, const DriftOptions& opt) {
  if (!(dz >= 0.0)) throw DomainError("drift length must be non-negative");
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  check_grid(field);
  ComplexField2D out = field;
  if (dz == 0.0) return out;

  const int nx = field.nx(), ny = field.ny();
  const int nsteps = opt.max_step > 0.0 ? static_cast<int>(std::ceil(dz / opt.max_step)) : 1;
  const double h = dz / nsteps;
  // dimensionless step coefficients dz / (2 k d^2)
  const double cx = h / (2.0 * k * field.dx() * field.dx());
  const double cy = h / (2.0 * k * field.dy() * field.dy());
  const Fft2D fft(nx, ny);
  const double inv_n = 1.0 / (static_cast<double>(nx) * ny);
  auto& v = out.values();
  for (int s = 0; s < nsteps; ++s) {
    fft.forward(v);
    const double frac = band_fraction(v, nx, ny, opt.guard_band);
    if (frac > opt.guard_fraction)
      throw PreconditionError("aliasing guard: " + std::to_string(frac) + " of the spectral power lies in the outer " +
                              std::to_string(opt.guard_band * 100.0) + "% band (limit " +
                              std::to_string(opt.guard_fraction) + "); refine the grid");
    kernels::drift_phase(v.data(), nx, ny, cx, cy, opt.exec);
    fft.inverse(v);
    for (auto& x : v) x *= inv_n;
    if (opt.absorbing_boundary) absorb(out);
  }
  out.meta.z += dz;
  out.meta.total_drift += dz;
  const double edge = edge_fraction(out);
  if (edge > opt.boundary_fraction)
    out.meta.warnings.push_back("field at the grid boundary reaches " + std::to_string(edge) + " of the peak");
  return out;
}

ComplexField2D apply_mask(const ComplexField2D& field, const Aperture& ap, double smoothing_width, int supersample,
                          Exec exec) {
  const Grid2D& g = field.grid();
  const double x0 = g.x(0), x1 = g.x(g.nx - 1), y0 = g.y(0), y1 = g.y(g.ny - 1);
  const double mx = 0.25 * (x1 - x0), my = 0.25 * (y1 - y0);
  const Vec2 c = aperture_center(ap);
  const double r = aperture_extent(ap) + 3.0 * smoothing_width;
  if (c.x - r < x0 + mx || c.x + r > x1 - mx || c.y - r < y0 + my || c.y + r > y1 - my)
    throw GeometryError("aperture support must leave a 25% grid margin on every side");
  ComplexField2D out = field;
  std::vector<double> mask(g.size());
  kernels::sample_mask(ap, g, smoothing_width, supersample, mask.data(), exec);
  kernels::multiply(out.values().data(), mask.data(), mask.size(), exec);
  return out;
}

ComplexField2D run_plan(const ComplexField2D& initial, const PropagationPlan& plan, const DriftOptions& opt) {
  if (!(plan.k > 0.0)) throw DomainError("propagation plan needs k > 0");
  for (const auto& step : plan.steps)
    if (const auto* d = std::get_if<FreeDrift>(&step); d && !(d->dz > 0.0))
      throw DomainError("every drift segment needs dz > 0");
  ComplexField2D f = initial;
  f.meta.flux_history.push_back(f.flux());
  for (const auto& step : plan.steps) {
    if (const auto* d = std::get_if<FreeDrift>(&step)) {
      f = drift(f, d->dz, plan.k, opt);
    } else {
      const auto& m = std::get<MaskStep>(step);
      f = apply_mask(f, m.aperture, m.smoothing_width, m.supersample, opt.exec);
    }
    f.meta.flux_history.push_back(f.flux());
  }
  return f;
}

}  // namespace twist
