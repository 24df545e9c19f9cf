#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "twist/vec2.hpp"

namespace twist {

struct CircleAperture {
  double radius;
  Vec2 center{};

  CircleAperture(double radius, Vec2 center = {});
};

/// General triangle; equilateral() is the common constructor.
class TriangleAperture {
 public:
  TriangleAperture(Vec2 v0, Vec2 v1, Vec2 v2);
  /// Side L, centroid at `center`, one vertex on the +y axis rotated by `orientation` (rad).
  static TriangleAperture equilateral(double L, double orientation = 0.0, Vec2 center = {});

  Vec2 v0() const { return v_[0]; }
  Vec2 v1() const { return v_[1]; }
  Vec2 v2() const { return v_[2]; }
  Vec2 vertex(int i) const { return v_[i]; }
  Vec2 e1() const { return v_[1] - v_[0]; }
  Vec2 e2() const { return v_[2] - v_[0]; }
  /// |e1 x e2|, twice the area.
  double jacobian() const { return jac_; }
  double area() const { return 0.5 * jac_; }
  Vec2 centroid() const { return (v_[0] + v_[1] + v_[2]) / 3.0; }
  /// Largest vertex distance from the centroid.
  double circumradius() const;

 private:
  Vec2 v_[3];
  double jac_;
};

using Aperture = std::variant<CircleAperture, TriangleAperture>;

/// Signed distance to the boundary, negative inside.
double signed_distance(const Aperture& ap, Vec2 p);
/// 1 inside, 0 outside; tanh ramp of width w on the signed distance when w > 0.
double transmission(const Aperture& ap, double x, double y, double smoothing_width);
Vec2 aperture_center(const Aperture& ap);
/// Largest distance of the boundary from the centre: the size D of the
/// far-field criterion (radius, or L/sqrt(3) for an equilateral triangle).
double aperture_extent(const Aperture& ap);

/// Fourier amplitude of the triangle's indicator, int exp(-i k.r) d^2r.
std::complex<double> triangle_ft(const TriangleAperture& tri, Vec2 k);
/// Tensor Gauss-Legendre quadrature of the same integral over the simplex map.
std::complex<double> triangle_ft_bruteforce(const TriangleAperture& tri, Vec2 k, int n_points);

struct ReciprocalBasis {
  Vec2 g1;
  Vec2 g2;
};
ReciprocalBasis reciprocal_basis(const TriangleAperture& tri);

struct LatticeNode {
  int m;
  int n;
  Vec2 k;
};
/// Nodes m G1 + n G2 with m, n >= 0 and m + n <= |l|. For l < 0 the set is
/// inverted through the origin (indices -m, -n).
std::vector<LatticeNode> highlighted_nodes(const ReciprocalBasis& basis, int ell);

/// Detector-plane lattice step 2 lambda z / (sqrt(3) L) of an equilateral triangle.
double detector_pitch(double L, double lambda, double z);

}  // namespace twist
