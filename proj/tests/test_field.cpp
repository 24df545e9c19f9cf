#include <cmath>
#include <random>

#include "doctest.h"
#include "twist/constants.hpp"
#include "twist/errors.hpp"
#include "twist/fft.hpp"
#include "twist/field.hpp"

using namespace twist;
using cplx = std::complex<double>;

namespace {

// Direct O(N^2) DFT of one axis at a time.
std::vector<cplx> naive_dft(const std::vector<cplx>& in, int nx, int ny, int sign) {
  std::vector<cplx> tmp(in.size()), out(in.size());
  for (int j = 0; j < ny; ++j)
    for (int m = 0; m < nx; ++m) {
      cplx s = 0;
      for (int i = 0; i < nx; ++i) s += in[j * nx + i] * std::polar(1.0, sign * constants::two_pi * m * i / nx);
      tmp[j * nx + m] = s;
    }
  for (int m = 0; m < nx; ++m)
    for (int n = 0; n < ny; ++n) {
      cplx s = 0;
      for (int j = 0; j < ny; ++j) s += tmp[j * nx + m] * std::polar(1.0, sign * constants::two_pi * n * j / ny);
      out[n * nx + m] = s;
    }
  return out;
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("centred grid geometry") {
    const auto g = Grid2D::centered(5, 0.5, {1.0, -2.0});
    CHECK(g.x(2) == doctest::Approx(1.0));
    CHECK(g.y(2) == doctest::Approx(-2.0));
    CHECK(g.x(0) == doctest::Approx(0.0));
    CHECK(g.size() == 25);
    CHECK(g.index(1, 2) == 11);
  }

  TEST_CASE("flux of a constant field") {
    ComplexField2D f(Grid2D::centered(8, 0.25));
    for (auto& v : f.values()) v = cplx(0, 2);
    CHECK(f.flux() == doctest::Approx(64 * 4 * 0.0625));
    CHECK(intensity(f).sum() == doctest::Approx(256.0));
    CHECK(intensity(f).max() == doctest::Approx(4.0));
    CHECK_THROWS_AS(ComplexField2D(Grid2D{0, 4, 1.0, 1.0, {}}), GeometryError);
  }

  TEST_CASE("bilinear interpolation reproduces bilinear functions") {
    ComplexField2D f(Grid2D{6, 5, 0.3, 0.7, {-1.0, 2.0}});
    auto fn = [](double x, double y) { return cplx(1.0 + 2.0 * x - y + 0.5 * x * y, x - 3.0 * y); };
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) f.at(i, j) = fn(f.x(i), f.y(j));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ux(-1.0, 0.5), uy(2.0, 4.8);
    for (int t = 0; t < 200; ++t) {
      const double x = ux(rng), y = uy(rng);
      CHECK(std::abs(bilinear(f, x, y) - fn(x, y)) < 1e-12);
    }
    CHECK(bilinear(f, 0.5, 4.8) == fn(0.5, 4.8));
    CHECK(bilinear(f, 5.0, 3.0) == cplx(0.0, 0.0));
    const auto r = resample(f, Grid2D{3, 3, 0.5, 0.5, {-0.5, 3.0}});
    CHECK(std::abs(r.at(2, 1) - fn(0.5, 3.5)) < 1e-12);
  }

  TEST_CASE("observation plane validation") {
    const auto p = ObservationPlane::square(0.2, 1e-5, 11);
    CHECK(p.grid().dx == doctest::Approx(2e-6));
    CHECK(p.grid().x(10) == doctest::Approx(1e-5));
    CHECK_THROWS_AS(ObservationPlane::square(0.0, 1.0, 4).validate(), GeometryError);
    CHECK_THROWS_AS(ObservationPlane::square(1.0, 1.0, 1).validate(), GeometryError);
    CHECK_THROWS_AS((ObservationPlane{1.0, 1.0, 1.0, 0.0, 1.0, 4, 4}).validate(), GeometryError);
  }

  TEST_CASE("FFT matches the direct DFT and round-trips") {
    const int nx = 8, ny = 4;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n01;
    std::vector<cplx> a(nx * ny);
    for (auto& v : a) v = {n01(rng), n01(rng)};
    auto b = a;
    Fft2D fft(nx, ny);
    fft.forward(b);
    const auto ref = naive_dft(a, nx, ny, -1);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - ref[i]) < 1e-12);
    fft.inverse(b);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] / double(nx * ny) - a[i]) < 1e-14);
    std::vector<cplx> wrong(5);
    CHECK_THROWS(fft.forward(wrong));
  }

  TEST_CASE("power-of-two helpers") {
    CHECK(is_power_of_two(1024));
    CHECK_FALSE(is_power_of_two(1000));
    CHECK_FALSE(is_power_of_two(0));
    CHECK(next_power_of_two(1000) == 1024);
    CHECK(next_power_of_two(1024) == 1024);
    CHECK(next_power_of_two(1) == 1);
  }
}
