#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "twist/constants.hpp"
#include "twist/detector.hpp"
#include "twist/errors.hpp"

using namespace twist;
using namespace twist::units;

namespace {

// Unit-flux Gaussian density on a centred n x n grid.
IntensityMap gaussian_map(int n, double d, double s) {
  IntensityMap m{Grid2D::centered(n, d), std::vector<double>(static_cast<size_t>(n) * n)};
  double sum = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double v = std::exp(-(m.grid.x(i) * m.grid.x(i) + m.grid.y(j) * m.grid.y(j)) / (s * s));
      m.values[m.grid.index(i, j)] = v;
      sum += v * d * d;
    }
  for (auto& v : m.values) v /= sum;
  return m;
}

Window footprint(const IntensityMap& m) {
  const auto& g = m.grid;
  return {g.x(0) - 0.5 * g.dx, g.x(g.nx - 1) + 0.5 * g.dx, g.y(0) - 0.5 * g.dy, g.y(g.ny - 1) + 0.5 * g.dy};
}

BeamBudget reference(double eta) { return {1 * pC, 1 * Hz, eta, 1, 0.0}; }

}  // namespace

TEST_SUITE("detector") {
  TEST_CASE("completeness, emptiness and refinement invariance") {
    const auto m = gaussian_map(128, 0.1, 1.5);
    const auto full = bin_field(m, 0.4, footprint(m));
    CHECK(full.F_det == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(full.F_det <= 1.0 + 1e-9);
    for (double p : full.P) CHECK(p >= 0.0);

    const auto corner = bin_field(m, 0.2, {-6.4, -6.0, -6.4, -6.0});
    CHECK(corner.F_det < 1e-12);

    const Window w{-2.03, 3.11, -1.07, 2.95};
    const auto a = bin_field(m, 0.3, w), b = bin_field(m, 0.15, w), c = bin_field(m, 0.37, w);
    CHECK(b.F_det == doctest::Approx(a.F_det).epsilon(1e-9));
    CHECK(c.F_det == doctest::Approx(a.F_det).epsilon(1e-9));
    CHECK(a.F_det < 1.0);
    CHECK(a.nx == 18);
    CHECK(a.ny == 14);
  }

  TEST_CASE("binning oracle on a cell-aligned window") {
    const auto m = gaussian_map(16, 1.0, 4.0);
    const auto img = bin_field(m, 2.0, footprint(m));
    // each 2 x 2 group of unit cells lands in one bin
    for (int bj = 0; bj < img.ny; ++bj)
      for (int bi = 0; bi < img.nx; ++bi) {
        const double expect = m.at(2 * bi, 2 * bj) + m.at(2 * bi + 1, 2 * bj) + m.at(2 * bi, 2 * bj + 1) +
                              m.at(2 * bi + 1, 2 * bj + 1);
        CHECK(img.at(bi, bj) == doctest::Approx(expect).epsilon(1e-13));
      }
  }

  TEST_CASE("preconditions") {
    const auto m = gaussian_map(32, 0.1, 0.5);
    CHECK_THROWS_AS(bin_field(m, 0.05, footprint(m)), PreconditionError);
    CHECK_THROWS_AS(bin_field(m, 0.2, {-1.0, 5.0, -1.0, 1.0}), GeometryError);
    CHECK_THROWS_AS(bin_field(m, 0.2, {1.0, 1.0, -1.0, 1.0}), GeometryError);
  }

  TEST_CASE("count rates of the reference budget") {
    CHECK(total_rate(reference(0.2), 1e-4) == doctest::Approx(124.8).epsilon(1e-3));
    CHECK(total_rate(reference(0.15), 1e-4) == doctest::Approx(93.6).epsilon(1e-3));
    CHECK(total_rate(reference(0.0), 1e-4) == 0.0);
    BeamBudget ion = reference(0.2);
    ion.Z = 6;
    CHECK(total_rate(ion, 1e-4) == doctest::Approx(total_rate(reference(0.2), 1e-4) / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS(total_rate(reference(1.5), 1e-4), DomainError);
  }

  TEST_CASE("accumulation times") {
    CHECK(time_to_counts(1e5, 125.0) == doctest::Approx(800.0));
    CHECK(time_to_counts(1e5, 125.0) / 60.0 == doctest::Approx(13.3).epsilon(3e-3));
    CHECK(time_to_counts(1e5, total_rate(reference(0.15), 1e-4)) / 60.0 == doctest::Approx(17.8).epsilon(3e-3));
    CHECK(time_to_counts(0.0, 125.0) == 0.0);
    CHECK_THROWS_AS(time_to_counts(1e5, 0.0), PreconditionError);
  }

  TEST_CASE("expected counts") {
    const auto m = gaussian_map(64, 0.1, 0.8);
    const auto img = bin_field(m, 0.2, {-2.0, 2.0, -2.0, 2.0});
    BeamBudget b = reference(0.2);
    for (double v : expected_counts(img, b)) CHECK(v == 0.0);
    b.exposure = 800.0;
    const auto n = expected_counts(img, b);
    const double sum = std::accumulate(n.begin(), n.end(), 0.0);
    CHECK(sum == doctest::Approx(total_rate(b, img.F_det) * 800.0).epsilon(1e-12));

    DetectorImage ref_img;
    ref_img.nx = ref_img.ny = 1;
    ref_img.P = {1e-4};
    const auto one = expected_counts(ref_img, b);
    CHECK(one[0] == doctest::Approx(1e5).epsilon(2e-3));
  }

  TEST_CASE("linearity in each budget factor") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    const BeamBudget base{2 * pC, 10 * Hz, 0.3, 1, 5.0};
    DetectorImage img;
    img.nx = 2;
    img.ny = 1;
    img.P = {1e-3, 2e-3};
    const double n0 = expected_counts(img, base)[1];
    for (int t = 0; t < 20; ++t) {
      const double s = u(rng);
      BeamBudget b = base;
      b.Q *= s;
      CHECK(expected_counts(img, b)[1] == doctest::Approx(s * n0).epsilon(1e-13));
      b = base;
      b.f_rep *= s;
      CHECK(expected_counts(img, b)[1] == doctest::Approx(s * n0).epsilon(1e-13));
      b = base;
      b.exposure *= s;
      CHECK(expected_counts(img, b)[1] == doctest::Approx(s * n0).epsilon(1e-13));
      b = base;
      b.eta = base.eta * s / 3.0;
      CHECK(expected_counts(img, b)[1] == doctest::Approx(s / 3.0 * n0).epsilon(1e-13));
    }
  }

  TEST_CASE("sampling flag and Poisson draws") {
    DetectorImage img;
    img.pixel_pitch = 0.5;
    flag_sampling(img, 1.5);
    CHECK_FALSE(img.undersampled);
    flag_sampling(img, 1.5 - 1e-9);
    CHECK(img.undersampled);

    const std::vector<double> mean(4000, 25.0);
    const auto a = poisson_sample(mean, 99), b = poisson_sample(mean, 99), c = poisson_sample(mean, 100);
    CHECK(a == b);
    CHECK(a != c);
    double s = 0.0, s2 = 0.0;
    for (double v : a) {
      CHECK(v == std::floor(v));
      s += v;
      s2 += v * v;
    }
    const double avg = s / a.size(), var = s2 / a.size() - avg * avg;
    CHECK(avg == doctest::Approx(25.0).epsilon(0.02));
    CHECK(var == doctest::Approx(25.0).epsilon(0.1));
    CHECK(poisson_sample({0.0, -1.0}, 1) == std::vector<double>{0.0, 0.0});
  }
}
