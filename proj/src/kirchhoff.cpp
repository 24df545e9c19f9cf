#include "twist/kirchhoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "twist/constants.hpp"
#include "twist/errors.hpp"
#include "twist/fft.hpp"
#include "twist/special.hpp"

namespace twist {

namespace {

using cplx = std::complex<double>;
constexpr double two_pi = constants::two_pi;

const char* kUnitFlux = "unit incident flux through the open aperture";
const char* kCarrier = "common factor exp(i k z) omitted from samples";

double plane_radius(const ObservationPlane& p, Vec2 c) {
  const double dx = std::max(std::abs(p.x_min - c.x), std::abs(p.x_max - c.x));
  const double dy = std::max(std::abs(p.y_min - c.y), std::abs(p.y_max - c.y));
  return std::hypot(dx, dy);
}

int rule_order(double excursion) { return static_cast<int>(std::ceil(10.0 + 4.0 * excursion / two_pi)); }

int choose(int requested, int required, double safety, const char* what) {
  if (requested == 0) return static_cast<int>(std::ceil(required * safety));
  if (requested < required)
    throw QuadratureError(std::string(what) + " quadrature order " + std::to_string(requested) +
                              " below the sampling rule; need at least " + std::to_string(required),
                          required);
  return requested;
}

ComplexField2D propagate_sources(std::vector<kernels::Source>& sources, double flux, const IncidentBeam& beam,
                                 const ObservationPlane& plane, Exec exec) {
  if (!(flux > 0.0)) throw PreconditionError("incident field carries no flux through the aperture");
  const double scale = 1.0 / std::sqrt(flux);
  for (auto& s : sources) s.weight *= scale;
  ComplexField2D out(plane.grid());
  const double k = incident_wavenumber(beam);
  kernels::kirchhoff_sum(sources, out.grid(), {k, incident_kz(beam), plane.z}, out.values().data(), exec);
  out.meta.z = plane.z;
  out.meta.wavelength = two_pi / k;
  out.meta.normalization = kUnitFlux;
  out.meta.carrier = kCarrier;
  return out;
}

}  // namespace

QuadratureOrders required_orders(const IncidentBeam& beam, const Aperture& ap, const ObservationPlane& plane) {
  plane.validate();
  const double k = incident_wavenumber(beam);
  const Vec2 c = aperture_center(ap);
  const double rho = plane_radius(plane, c);
  const double rp = aperture_extent(ap);
  const double obs = k * rho * rp / plane.z + k * rp * rp / (2.0 * plane.z);
  const double beam_r = incident_radial_phase(beam, norm(c) + rp);
  const double ell = std::abs(incident_ell(beam));
  if (std::holds_alternative<CircleAperture>(ap)) {
    // azimuthal: peak-to-peak of k rho rho' cos(phi - phi')/z plus the helical winding
    return {rule_order(obs + beam_r), rule_order(2.0 * obs + two_pi * ell)};
  }
  const int n = rule_order(obs + beam_r + constants::pi * ell);
  return {n, n};
}

ComplexField2D kirchhoff_circular(const IncidentBeam& beam, double a, const ObservationPlane& plane,
                                  const QuadratureSpec& quad, Exec exec) {
  const CircleAperture circle(a);
  const auto req = required_orders(beam, circle, plane);
  const int nr = choose(quad.radial, req.radial, quad.safety, "radial");
  const int nphi = choose(quad.angular, req.angular, quad.safety, "azimuthal");
  const auto rule = gauss_legendre(nr, 0.0, a);
  std::vector<kernels::Source> sources;
  sources.reserve(static_cast<size_t>(nr) * nphi);
  double flux = 0.0;
  const double dphi = two_pi / nphi;
  for (int j = 0; j < nphi; ++j) {
    const double phi = j * dphi;
    const double c = std::cos(phi), s = std::sin(phi);
    for (int i = 0; i < nr; ++i) {
      const double r = rule.nodes[i];
      const double w = rule.weights[i] * r * dphi;
      const cplx psi = incident_amplitude(beam, r * c, r * s);
      flux += w * std::norm(psi);
      sources.push_back({r * c, r * s, w * psi});
    }
  }
  return propagate_sources(sources, flux, beam, plane, exec);
}

ComplexField2D kirchhoff_triangular(const IncidentBeam& beam, const TriangleAperture& tri,
                                    const ObservationPlane& plane, const QuadratureSpec& quad, Exec exec) {
  const auto req = required_orders(beam, tri, plane);
  const int ns = choose(quad.radial, req.radial, quad.safety, "simplex");
  const int nt = choose(quad.angular, req.angular, quad.safety, "simplex");
  const auto rs = gauss_legendre(ns, 0.0, 1.0);
  const auto rt = gauss_legendre(nt, 0.0, 1.0);
  std::vector<kernels::Source> sources;
  sources.reserve(static_cast<size_t>(ns) * nt);
  double flux = 0.0;
  const Vec2 v0 = tri.v0(), e1 = tri.e1(), e2 = tri.e2();
  for (int i = 0; i < ns; ++i) {
    const double s = rs.nodes[i];
    for (int j = 0; j < nt; ++j) {
      const double t = (1.0 - s) * rt.nodes[j];
      const double w = tri.jacobian() * (1.0 - s) * rs.weights[i] * rt.weights[j];
      const Vec2 r = v0 + s * e1 + t * e2;
      const cplx psi = incident_amplitude(beam, r.x, r.y);
      flux += w * std::norm(psi);
      sources.push_back({r.x, r.y, w * psi});
    }
  }
  return propagate_sources(sources, flux, beam, plane, exec);
}

ComplexField2D kirchhoff(const IncidentBeam& beam, const Aperture& ap, const ObservationPlane& plane,
                         const QuadratureSpec& quad, Exec exec) {
  if (const auto* c = std::get_if<CircleAperture>(&ap)) {
    if (c->center.x != 0.0 || c->center.y != 0.0)
      throw GeometryError("circular Kirchhoff path needs the aperture centred on the beam axis");
    return kirchhoff_circular(beam, c->radius, plane, quad, exec);
  }
  return kirchhoff_triangular(beam, std::get<TriangleAperture>(ap), plane, quad, exec);
}

Grid2D aperture_grid(const Aperture& ap, double d, int n) { return Grid2D::centered(n, d, aperture_center(ap)); }

ComplexField2D sample_aperture_field(const IncidentBeam& beam, const Aperture& ap, const Grid2D& grid,
                                     double smoothing_width, int supersample, Exec exec) {
  ComplexField2D field(grid);
  std::vector<double> mask(grid.size());
  kernels::sample_mask(ap, grid, smoothing_width, supersample, mask.data(), exec);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double m = mask[grid.index(i, j)];
      field.at(i, j) = m == 0.0 ? cplx{} : m * incident_amplitude(beam, grid.x(i), grid.y(j));
    }
  const double flux = field.flux();
  if (!(flux > 0.0)) throw PreconditionError("incident field carries no flux through the aperture");
  const double scale = 1.0 / std::sqrt(flux);
  for (auto& v : field.values()) v *= scale;
  field.meta.wavelength = two_pi / incident_wavenumber(beam);
  field.meta.normalization = kUnitFlux;
  return field;
}

double support_fraunhofer_distance(const ComplexField2D& field, double lambda) {
  double peak = 0.0;
  for (const auto& v : field.values()) peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;
  double sw = 0.0, cx = 0.0, cy = 0.0;
  for (int j = 0; j < field.ny(); ++j)
    for (int i = 0; i < field.nx(); ++i)
      if (std::abs(field.at(i, j)) > floor) {
        sw += 1.0;
        cx += field.x(i);
        cy += field.y(j);
      }
  if (sw == 0.0) return 0.0;
  cx /= sw;
  cy /= sw;
  double D = 0.0;
  for (int j = 0; j < field.ny(); ++j)
    for (int i = 0; i < field.nx(); ++i)
      if (std::abs(field.at(i, j)) > floor) D = std::max(D, std::hypot(field.x(i) - cx, field.y(j) - cy));
  return D * D / lambda;
}

ComplexField2D fraunhofer_fft(const ComplexField2D& aperture_field, double lambda, double z,
                              const ObservationPlane& plane, int pad_factor) {
  plane.validate();
  if (!(lambda > 0.0) || !(z > 0.0)) throw DomainError("fraunhofer_fft needs lambda > 0 and z > 0");
  if (pad_factor < 1) throw DomainError("padding factor must be at least 1");
  const Grid2D& g = aperture_field.grid();
  const int Nx = next_power_of_two(pad_factor * g.nx);
  const int Ny = next_power_of_two(pad_factor * g.ny);
  std::vector<cplx> spec(static_cast<size_t>(Nx) * Ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) spec[static_cast<size_t>(j) * Nx + i] = aperture_field.at(i, j);
  Fft2D(Nx, Ny).forward(spec);

  // Continuous transform at bin frequencies, origin phase removed so the
  // spectrum is smooth between bins.
  const double k = two_pi / lambda;
  const double dkx = two_pi / (Nx * g.dx), dky = two_pi / (Ny * g.dy);
  const cplx pref = g.dx * g.dy / (cplx(0.0, 1.0) * lambda * z);
  auto bin_value = [&](int mx, int my) {
    const int ix = ((mx % Nx) + Nx) % Nx, iy = ((my % Ny) + Ny) % Ny;
    const double kx = mx * dkx, ky = my * dky;
    return pref * std::polar(1.0, -(kx * g.origin.x + ky * g.origin.y)) * spec[static_cast<size_t>(iy) * Nx + ix];
  };

  ComplexField2D out(plane.grid());
  const Grid2D& og = out.grid();
  for (int j = 0; j < og.ny; ++j) {
    for (int i = 0; i < og.nx; ++i) {
      const double x = og.x(i), y = og.y(j);
      const double u = (k * x / z) / dkx, v = (k * y / z) / dky;
      if (std::abs(u) > Nx / 2 - 1 || std::abs(v) > Ny / 2 - 1)
        throw GeometryError("observation plane extends beyond the spectral window of the aperture grid");
      const int mx = static_cast<int>(std::floor(u)), my = static_cast<int>(std::floor(v));
      const double fx = u - mx, fy = v - my;
      const cplx val = (1 - fx) * (1 - fy) * bin_value(mx, my) + fx * (1 - fy) * bin_value(mx + 1, my) +
                       (1 - fx) * fy * bin_value(mx, my + 1) + fx * fy * bin_value(mx + 1, my + 1);
      out.at(i, j) = val * std::polar(1.0, k * (x * x + y * y) / (2.0 * z));
    }
  }
  out.meta.z = z;
  out.meta.wavelength = lambda;
  out.meta.normalization = kUnitFlux;
  out.meta.carrier = kCarrier;
  const double zF = support_fraunhofer_distance(aperture_field, lambda);
  if (z < zF)
    out.meta.warnings.push_back("z = " + std::to_string(z) + " m is inside the Fraunhofer distance " +
                                std::to_string(zF) + " m");
  return out;
}

}  // namespace twist
