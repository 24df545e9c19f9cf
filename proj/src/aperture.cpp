#include "twist/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "twist/constants.hpp"
#include "twist/errors.hpp"
#include "twist/special.hpp"

namespace twist {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// First divided difference of h(x) = -exp(-ix): i exp(-i(a+b)/2) sinc((b-a)/2).
cplx first_difference(double a, double b) {
  return I * std::polar(1.0, -0.5 * (a + b)) * sinc(0.5 * (b - a));
}

// Second divided difference h[0, alpha, beta]; equals the simplex integral
// of exp(-i(alpha s + beta t)).
cplx simplex_integral(double alpha, double beta) {
  if (std::max(std::abs(alpha), std::abs(beta)) < 0.5) {
    // sum_j (-i)^j H_j / (j+2)!, H_j = sum_{p+q=j} alpha^p beta^q
    cplx sum = 0.5;
    cplx phase = 1.0;
    double H = 1.0, apow = 1.0, fact = 2.0;
    for (int j = 1; j < 40; ++j) {
      apow *= alpha;
      H = beta * H + apow;
      phase *= -I;
      fact *= (j + 2.0);
      const cplx term = phase * (H / fact);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  double x[3] = {0.0, alpha, beta};
  std::sort(x, x + 3);
  return (first_difference(x[1], x[2]) - first_difference(x[0], x[1])) / (x[2] - x[0]);
}

}  // namespace

CircleAperture::CircleAperture(double radius_, Vec2 center_) : radius(radius_), center(center_) {
  if (!(radius > 0.0)) throw GeometryError("circle radius must be positive");
}

TriangleAperture::TriangleAperture(Vec2 v0, Vec2 v1, Vec2 v2) : v_{v0, v1, v2} {
  jac_ = std::abs(cross(v1 - v0, v2 - v0));
  const double scale = std::max({norm(v1 - v0), norm(v2 - v0), norm(v2 - v1)});
  if (!(jac_ > 1e-12 * scale * scale)) throw GeometryError("degenerate triangle");
}

TriangleAperture TriangleAperture::equilateral(double L, double orientation, Vec2 center) {
  if (!(L > 0.0)) throw GeometryError("triangle side must be positive");
  const double R = L / std::sqrt(3.0);
  const double base = constants::pi / 2.0 + orientation;
  Vec2 v[3];
  for (int i = 0; i < 3; ++i) {
    const double a = base + i * constants::two_pi / 3.0;
    v[i] = center + Vec2{R * std::cos(a), R * std::sin(a)};
  }
  return TriangleAperture(v[0], v[1], v[2]);
}

double TriangleAperture::circumradius() const {
  const Vec2 c = centroid();
  return std::max({norm(v_[0] - c), norm(v_[1] - c), norm(v_[2] - c)});
}

double signed_distance(const Aperture& ap, Vec2 p) {
  if (const auto* c = std::get_if<CircleAperture>(&ap)) return norm(p - c->center) - c->radius;
  const auto& t = std::get<TriangleAperture>(ap);
  const double orient = cross(t.e1(), t.e2()) > 0.0 ? 1.0 : -1.0;
  bool inside = true;
  double d = 1e300;
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = t.vertex(i), b = t.vertex((i + 1) % 3);
    if (orient * cross(b - a, p - a) < 0.0) inside = false;
    d = std::min(d, segment_distance(p, a, b));
  }
  return inside ? -d : d;
}

double transmission(const Aperture& ap, double x, double y, double smoothing_width) {
  if (smoothing_width < 0.0) throw DomainError("smoothing width must be non-negative");
  const double d = signed_distance(ap, {x, y});
  if (smoothing_width == 0.0) return d < 0.0 ? 1.0 : (d > 0.0 ? 0.0 : 0.5);
  return 0.5 * (1.0 - std::tanh(d / smoothing_width));
}

Vec2 aperture_center(const Aperture& ap) {
  if (const auto* c = std::get_if<CircleAperture>(&ap)) return c->center;
  return std::get<TriangleAperture>(ap).centroid();
}

double aperture_extent(const Aperture& ap) {
  if (const auto* c = std::get_if<CircleAperture>(&ap)) return c->radius;
  return std::get<TriangleAperture>(ap).circumradius();
}

std::complex<double> triangle_ft(const TriangleAperture& tri, Vec2 k) {
  const double alpha = dot(k, tri.e1()), beta = dot(k, tri.e2());
  return tri.jacobian() * std::polar(1.0, -dot(k, tri.v0())) * simplex_integral(alpha, beta);
}

std::complex<double> triangle_ft_bruteforce(const TriangleAperture& tri, Vec2 k, int n_points) {
  const auto rule = gauss_legendre(n_points, 0.0, 1.0);
  const double alpha = dot(k, tri.e1()), beta = dot(k, tri.e2());
  cplx sum = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double s = rule.nodes[i];
    cplx inner = 0.0;
    for (int j = 0; j < n_points; ++j) {
      const double t = (1.0 - s) * rule.nodes[j];
      inner += rule.weights[j] * std::polar(1.0, -(alpha * s + beta * t));
    }
    sum += rule.weights[i] * (1.0 - s) * inner;
  }
  return tri.jacobian() * std::polar(1.0, -dot(k, tri.v0())) * sum;
}

ReciprocalBasis reciprocal_basis(const TriangleAperture& tri) {
  const Vec2 e1 = tri.e1(), e2 = tri.e2();
  const double det = cross(e1, e2);
  const double scale = dot(e1, e1) + dot(e2, e2);
  if (!(std::abs(det) > 1e-12 * scale)) throw GeometryError("degenerate triangle has no reciprocal basis");
  const double f = constants::two_pi / det;
  return {{f * e2.y, -f * e2.x}, {-f * e1.y, f * e1.x}};
}

std::vector<LatticeNode> highlighted_nodes(const ReciprocalBasis& basis, int ell) {
  const int a = std::abs(ell);
  const int sign = ell < 0 ? -1 : 1;
  std::vector<LatticeNode> nodes;
  nodes.reserve(static_cast<size_t>((a + 1) * (a + 2) / 2));
  for (int m = 0; m <= a; ++m) {
    for (int n = 0; m + n <= a; ++n) {
      const int mm = sign * m, nn = sign * n;
      nodes.push_back({mm, nn, mm * basis.g1 + nn * basis.g2});
    }
  }
  return nodes;
}

double detector_pitch(double L, double lambda, double z) {
  if (!(L > 0.0 && lambda > 0.0 && z > 0.0)) throw DomainError("detector_pitch needs positive inputs");
  return 2.0 * lambda * z / (std::sqrt(3.0) * L);
}

}  // namespace twist
