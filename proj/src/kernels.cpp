#include "twist/kernels.hpp"

#include <cmath>

#include "twist/constants.hpp"

namespace twist::kernels {

namespace {

using cplx = std::complex<double>;

void kirchhoff_row(const std::vector<Source>& sources, const Grid2D& g, const KirchhoffParams& p, int j,
                   cplx* out) {
  const double z2 = p.z * p.z;
  const double inv4pi = 1.0 / (4.0 * constants::pi);
  const double y = g.y(j);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    double re = 0.0, im = 0.0;
    for (const Source& s : sources) {
      const double ddx = x - s.x, ddy = y - s.y;
      const double s2 = ddx * ddx + ddy * ddy;
      const double R = std::sqrt(s2 + z2);
      const double phase = p.k * s2 / (R + p.z);
      const double invR = 1.0 / R;
      // (ik - 1/R) z/R + i k_z, divided by 4 pi R
      const double ore = -p.z * invR * invR * invR * inv4pi;
      const double oim = (p.k * p.z * invR + p.k_z) * invR * inv4pi;
      const double c = std::cos(phase), sn = std::sin(phase);
      const double ere = c * ore - sn * oim, eim = c * oim + sn * ore;
      re += s.weight.real() * ere - s.weight.imag() * eim;
      im += s.weight.real() * eim + s.weight.imag() * ere;
    }
    out[g.index(i, j)] = {re, im};
  }
}

double signed_frequency(int m, int n) {
  const int s = (m <= n / 2) ? m : m - n;
  return constants::two_pi * s / n;
}

void drift_row(cplx* spec, int nx, int ny, double cx, double cy, int j) {
  const double qy = signed_frequency(j, ny);
  const double py = cy * qy * qy;
  for (int i = 0; i < nx; ++i) {
    const double qx = signed_frequency(i, nx);
    spec[static_cast<size_t>(j) * nx + i] *= std::polar(1.0, -(cx * qx * qx + py));
  }
}

void mask_row(const Aperture& ap, const Grid2D& g, double w, int ss, int j, double* out) {
  const double inv = 1.0 / (static_cast<double>(ss) * ss);
  for (int i = 0; i < g.nx; ++i) {
    double acc = 0.0;
    if (ss <= 1) {
      acc = transmission(ap, g.x(i), g.y(j), w);
    } else {
      for (int b = 0; b < ss; ++b) {
        const double y = g.y(j) + ((b + 0.5) / ss - 0.5) * g.dy;
        for (int a = 0; a < ss; ++a) {
          const double x = g.x(i) + ((a + 0.5) / ss - 0.5) * g.dx;
          acc += transmission(ap, x, y, w);
        }
      }
      acc *= inv;
    }
    out[g.index(i, j)] = acc;
  }
}

}  // namespace

void kirchhoff_sum(const std::vector<Source>& sources, const Grid2D& targets, const KirchhoffParams& p,
                   std::complex<double>* out, Exec exec) {
  if (exec == Exec::serial) {
    for (int j = 0; j < targets.ny; ++j) kirchhoff_row(sources, targets, p, j, out);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < targets.ny; ++j) kirchhoff_row(sources, targets, p, j, out);
}

void drift_phase(std::complex<double>* spectrum, int nx, int ny, double cx, double cy, Exec exec) {
  if (exec == Exec::serial) {
    for (int j = 0; j < ny; ++j) drift_row(spectrum, nx, ny, cx, cy, j);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) drift_row(spectrum, nx, ny, cx, cy, j);
}

void sample_mask(const Aperture& ap, const Grid2D& grid, double smoothing_width, int supersample, double* out,
                 Exec exec) {
  if (exec == Exec::serial) {
    for (int j = 0; j < grid.ny; ++j) mask_row(ap, grid, smoothing_width, supersample, j, out);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int j = 0; j < grid.ny; ++j) mask_row(ap, grid, smoothing_width, supersample, j, out);
}

void multiply(std::complex<double>* values, const double* mask, size_t n, Exec exec) {
  if (exec == Exec::serial) {
    for (size_t i = 0; i < n; ++i) values[i] *= mask[i];
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) values[i] *= mask[i];
}

}  // namespace twist::kernels
