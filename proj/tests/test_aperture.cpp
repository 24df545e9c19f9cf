#include <cmath>
#include <random>

#include "doctest.h"
#include "twist/aperture.hpp"
#include "twist/constants.hpp"
#include "twist/errors.hpp"

using namespace twist;
using constants::pi;
using cplx = std::complex<double>;

namespace {

// Closed rational form, valid away from the singular lines.
cplx rational_ft(const TriangleAperture& t, Vec2 k) {
  const double a = dot(k, t.e1()), b = dot(k, t.e2());
  const cplx num = a * std::polar(1.0, -b) - b * std::polar(1.0, -a) - (a - b);
  return t.jacobian() * std::polar(1.0, -dot(k, t.v0())) * num / (a * b * (a - b));
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

}  // namespace

TEST_SUITE("aperture") {
  TEST_CASE("transmission values") {
    const Aperture tri = TriangleAperture::equilateral(1.0);
    CHECK(transmission(tri, 0.0, 0.0, 0.0) == 1.0);
    CHECK(transmission(tri, 10.0, 0.0, 0.0) == 0.0);
    const auto t = std::get<TriangleAperture>(tri);
    const Vec2 mid = 0.5 * (t.v1() + t.v2());
    CHECK(transmission(tri, mid.x, mid.y, 0.05) == doctest::Approx(0.5).epsilon(1e-12));
    const Aperture circ = CircleAperture(2.0);
    CHECK(transmission(circ, 2.0, 0.0, 0.1) == doctest::Approx(0.5));
    CHECK(transmission(circ, 1.0, 1.0, 0.0) == 1.0);
    CHECK_THROWS_AS(transmission(circ, 0, 0, -1.0), DomainError);
  }

  TEST_CASE("equilateral constructor") {
    const auto t = TriangleAperture::equilateral(400e-9, 0.3, {1e-7, -2e-7});
    const double L = 400e-9;
    CHECK(norm(t.e1()) == doctest::Approx(L).epsilon(1e-12));
    CHECK(norm(t.e2()) == doctest::Approx(L).epsilon(1e-12));
    CHECK(norm(t.e1() - t.e2()) == doctest::Approx(L).epsilon(1e-12));
    CHECK(t.centroid().x == doctest::Approx(1e-7));
    const auto d = TriangleAperture::equilateral(1.0);
    CHECK(d.v0().x == doctest::Approx(0.0).scale(1.0));
    CHECK(d.v0().y > 0.0);
    CHECK(t.area() == doctest::Approx(std::sqrt(3.0) / 4 * L * L).epsilon(1e-12));
    CHECK_THROWS_AS(TriangleAperture({0, 0}, {1, 1}, {2, 2}), GeometryError);
  }

  TEST_CASE("DC value and beta -> 0 limit") {
    const auto t = TriangleAperture::equilateral(1.3, 0.2);
    CHECK(rel(triangle_ft(t, {0, 0}), t.area()) < 1e-12);
    // k perpendicular to e2 sets beta = 0 exactly
    const Vec2 k = 2.7 * perp(t.e2()) / norm(t.e2());
    const double a = dot(k, t.e1());
    const cplx limit = t.jacobian() * std::polar(1.0, -dot(k, t.v0())) *
                       (1.0 - cplx(0, 1) * a - std::polar(1.0, -a)) / (a * a);
    CHECK(rel(triangle_ft(t, k), limit) < 1e-12);
    CHECK(rel(triangle_ft_bruteforce(t, k, 64), limit) < 1e-6);
  }

  TEST_CASE("bruteforce quadrature") {
    const auto t = TriangleAperture::equilateral(1.0, 0.4);
    for (int n : {1, 2, 7}) CHECK(rel(triangle_ft_bruteforce(t, {0, 0}, n), t.area()) < 1e-14);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const auto g = reciprocal_basis(t);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      // k with prescribed alpha, beta in [-20, 20]
      const double a = u(rng), b = u(rng);
      const Vec2 k = (a / (2 * pi)) * g.g1 + (b / (2 * pi)) * g.g2;
      worst = std::max(worst, rel(triangle_ft_bruteforce(t, k, 64), triangle_ft(t, k)));
    }
    CHECK(worst < 1e-8);
    // on the alpha = beta line
    const Vec2 kd = (7.3 / (2 * pi)) * (g.g1 + g.g2);
    CHECK(rel(triangle_ft(t, kd), triangle_ft_bruteforce(t, kd, 64)) < 1e-6);
  }

  TEST_CASE("agreement with the rational form near the singular lines") {
    const auto t = TriangleAperture::equilateral(1.0, 0.1);
    const auto g = reciprocal_basis(t);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0), side(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double s = u(rng);
      const Vec2 on[3] = {(s / (2 * pi)) * g.g2, (s / (2 * pi)) * g.g1, (s / (2 * pi)) * (g.g1 + g.g2)};
      for (const Vec2& k0 : on) {
        const double ang = pi * side(rng);
        const Vec2 k = k0 + 1e-4 * norm(k0) * Vec2{std::cos(ang), std::sin(ang)};
        worst = std::max(worst, rel(triangle_ft(t, k), rational_ft(t, k)));
        // continuity onto the line itself
        const Vec2 kc = k0 + 1e-9 * norm(k0) * Vec2{std::cos(ang), std::sin(ang)};
        worst = std::max(worst, rel(triangle_ft(t, kc), triangle_ft(t, k0)) * 1e-2);
      }
    }
    CHECK(worst < 1e-5);
  }

  TEST_CASE("Hermitian symmetry, relabeling and scaling") {
    const TriangleAperture t({0.1, 0.2}, {1.4, -0.3}, {0.6, 1.1});
    const TriangleAperture r(t.v1(), t.v2(), t.v0());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    double herm = 0.0, perm = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec2 k{u(rng), u(rng)};
      herm = std::max(herm, rel(triangle_ft(t, -k), std::conj(triangle_ft(t, k))));
      perm = std::max(perm, std::abs(std::abs(triangle_ft(r, k)) - std::abs(triangle_ft(t, k))) /
                                std::abs(triangle_ft(t, k)));
    }
    CHECK(herm < 1e-12);
    CHECK(perm < 1e-10);

    const double L = 3.7;
    const auto t1 = TriangleAperture::equilateral(1.0, 0.5);
    const auto tL = TriangleAperture::equilateral(L, 0.5);
    double scale = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec2 k{u(rng) / L, u(rng) / L};
      scale = std::max(scale, rel(triangle_ft(tL, k), L * L * triangle_ft(t1, L * k)));
    }
    CHECK(scale < 1e-10);
  }

  TEST_CASE("Parseval at the mask") {
    const auto t = TriangleAperture::equilateral(1.0);
    const double K = 400.0, dk = 0.5;
    const int n = static_cast<int>(2 * K / dk);
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) s += std::norm(triangle_ft(t, {-K + (i + 0.5) * dk, -K + (j + 0.5) * dk}));
    s *= (dk / (2 * pi)) * (dk / (2 * pi));
    CHECK(s == doctest::Approx(t.area()).epsilon(0.01));
  }

  TEST_CASE("reciprocal basis") {
    const double L = 400e-9;
    const auto t = TriangleAperture::equilateral(L);
    const auto g = reciprocal_basis(t);
    CHECK(norm(g.g1) == doctest::Approx(4 * pi / (std::sqrt(3.0) * L)).epsilon(1e-12));
    CHECK(norm(g.g1) == doctest::Approx(1.814e7).epsilon(1e-3));
    CHECK(norm(g.g2) == doctest::Approx(norm(g.g1)).epsilon(1e-12));
    // dual of a 60 degree edge pair: 120 degrees, so g1 and -g2 span the 60 degree cell
    CHECK(std::acos(dot(g.g1, g.g2) / (norm(g.g1) * norm(g.g2))) == doctest::Approx(2 * pi / 3).epsilon(1e-12));
    CHECK(std::acos(-dot(g.g1, g.g2) / (norm(g.g1) * norm(g.g2))) == doctest::Approx(pi / 3).epsilon(1e-12));
    CHECK(dot(t.e1(), g.g1) == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(dot(t.e2(), g.g2) == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(std::abs(dot(t.e1(), g.g2)) < 1e-12 * norm(t.e1()) * norm(g.g2));
    CHECK(std::abs(dot(t.e2(), g.g1)) < 1e-12 * norm(t.e2()) * norm(g.g1));

    const double th = 0.77;
    const auto gr = reciprocal_basis(TriangleAperture::equilateral(L, th));
    const Vec2 rot = rotate(g.g1, th);
    CHECK(gr.g1.x == doctest::Approx(rot.x).epsilon(1e-12));
    CHECK(gr.g1.y == doctest::Approx(rot.y).epsilon(1e-12));
  }

  TEST_CASE("highlighted nodes") {
    const auto g = reciprocal_basis(TriangleAperture::equilateral(1.0));
    CHECK(highlighted_nodes(g, 0).size() == 1);
    CHECK(highlighted_nodes(g, 0)[0].k == Vec2{0, 0});
    CHECK(highlighted_nodes(g, 1).size() == 3);
    CHECK(highlighted_nodes(g, 4).size() == 15);
    for (int l = 0; l <= 20; ++l) {
      int count = 0;
      for (int m = 0; m <= l; ++m)
        for (int n = 0; n <= l; ++n)
          if (m + n <= l) ++count;
      CHECK(highlighted_nodes(g, l).size() == static_cast<size_t>(count));
      CHECK(highlighted_nodes(g, -l).size() == static_cast<size_t>(count));
    }
    const auto pos = highlighted_nodes(g, 3), neg = highlighted_nodes(g, -3);
    for (size_t i = 0; i < pos.size(); ++i) {
      CHECK(neg[i].k.x == doctest::Approx(-pos[i].k.x));
      CHECK(neg[i].k.y == doctest::Approx(-pos[i].k.y));
    }
  }

  TEST_CASE("detector pitch") {
    const double lam = 3.7014e-12;
    CHECK(detector_pitch(400e-9, lam, 0.2) / 1e-6 == doctest::Approx(2.137).epsilon(2e-3));
    CHECK(detector_pitch(800e-9, lam, 0.2) == doctest::Approx(0.5 * detector_pitch(400e-9, lam, 0.2)));
    CHECK(detector_pitch(40e-9, 28.6135e-15, 2.0) / 1e-6 == doctest::Approx(1.652).epsilon(2e-3));
    const auto g = reciprocal_basis(TriangleAperture::equilateral(400e-9, 0.3));
    CHECK(detector_pitch(400e-9, lam, 0.2) == doctest::Approx(lam * 0.2 / (2 * pi) * norm(g.g1)).epsilon(1e-14));
    CHECK_THROWS_AS(detector_pitch(0.0, lam, 1.0), DomainError);
  }
}
