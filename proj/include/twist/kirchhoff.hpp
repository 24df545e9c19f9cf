#pragma once

#include "twist/aperture.hpp"
#include "twist/beams.hpp"
#include "twist/field.hpp"
#include "twist/kernels.hpp"

namespace twist {

/// Quadrature orders per aperture dimension. For a circle `radial` is the
/// Gauss-Legendre order in rho' and `angular` the number of uniform azimuthal
/// nodes; for a triangle they are the Gauss-Legendre orders along e1 and e2.
/// Zero selects `safety` times the sampling-rule minimum.
struct QuadratureSpec {
  int radial = 0;
  int angular = 0;
  double safety = 1.5;
};

struct QuadratureOrders {
  int radial;
  int angular;
};

/// Minimum orders N >= 10 + 4 (phase excursion)/2pi over each aperture
/// dimension, counting the observation phase k rho rho'/z + k rho'^2/2z and the
/// incident field's own phase structure.
QuadratureOrders required_orders(const IncidentBeam& beam, const Aperture& ap, const ObservationPlane& plane);

ComplexField2D kirchhoff_circular(const IncidentBeam& beam, double a, const ObservationPlane& plane,
                                  const QuadratureSpec& quad = {}, Exec exec = Exec::parallel);
ComplexField2D kirchhoff_triangular(const IncidentBeam& beam, const TriangleAperture& tri,
                                    const ObservationPlane& plane, const QuadratureSpec& quad = {},
                                    Exec exec = Exec::parallel);
ComplexField2D kirchhoff(const IncidentBeam& beam, const Aperture& ap, const ObservationPlane& plane,
                         const QuadratureSpec& quad = {}, Exec exec = Exec::parallel);

/// Aperture grid of n x n samples with spacing d centred on the aperture.
Grid2D aperture_grid(const Aperture& ap, double d, int n);

/// Transmission-weighted incident field on a grid, normalized to unit flux.
ComplexField2D sample_aperture_field(const IncidentBeam& beam, const Aperture& ap, const Grid2D& grid,
                                     double smoothing_width = 0.0, int supersample = 4,
                                     Exec exec = Exec::parallel);

/// Far-field pattern of a sampled aperture field: zero-padded FFT mapped to the
/// detector by (x, y) = (lambda z / 2pi) (kx, ky) with the 1/(i lambda z)
/// prefactor, then bilinearly resampled onto the plane.
ComplexField2D fraunhofer_fft(const ComplexField2D& aperture_field, double lambda, double z,
                              const ObservationPlane& plane, int pad_factor = 8);

/// Far-field distance D^2 / lambda of the non-zero support of a sampled field.
double support_fraunhofer_distance(const ComplexField2D& field, double lambda);

}  // namespace twist
