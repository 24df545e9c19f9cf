#include "twist/special.hpp"

#include <algorithm>
#include <cmath>

#include "twist/constants.hpp"
#include "twist/errors.hpp"

namespace twist {

namespace {

constexpr double pi = constants::pi;

// Hankel asymptotic expansion for J_0 and J_1 at large x.
void bessel01_asymptotic(double x, double& j0, double& j1) {
  const double c = std::cos(x), s = std::sin(x);
  const double inv8x = 1.0 / (8.0 * x);
  double out[2];
  for (int nu = 0; nu < 2; ++nu) {
    const double mu = 4.0 * nu * nu;
    double P = 1.0, Q = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) * inv8x / k;
      if (k % 2 == 1) {
        Q += ((k / 2) % 2 == 0 ? term : -term);
      } else {
        P += ((k / 2) % 2 == 0 ? term : -term);
      }
      if (std::abs(term) < 1e-17) break;
    }
    // cos/sin of chi = x - (nu/2 + 1/4) pi, assembled from cos x and sin x.
    double cchi, schi;
    if (nu == 0) {
      cchi = (c + s) / std::sqrt(2.0);
      schi = (s - c) / std::sqrt(2.0);
    } else {
      cchi = (s - c) / std::sqrt(2.0);
      schi = -(s + c) / std::sqrt(2.0);
    }
    out[nu] = std::sqrt(2.0 / (pi * x)) * (P * cchi - Q * schi);
  }
  j0 = out[0];
  j1 = out[1];
}

// Miller's downward recurrence normalized by J_0 + 2 sum J_2k = 1.
double bessel_miller(int n, double x) {
  const double big = 1e250;
  const double top = std::max<double>(n, x);
  int m = static_cast<int>(top + 30.0 + std::sqrt(160.0 * top));
  m += m % 2;
  double jp1 = 0.0, j = 1e-300, result = 0.0, norm = 0.0;
  for (int k = m; k >= 1; --k) {
    const double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;
    // j now holds J_{k-1}
    if (k - 1 == n) result = j;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? j : 2.0 * j);
    if (std::abs(j) > big) {
      j /= big;
      jp1 /= big;
      result /= big;
      norm /= big;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(-n, x);
  if (x < 0.0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(n, -x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 25.0 || n > x) return bessel_miller(n, x);
  double j0, j1;
  bessel01_asymptotic(x, j0, j1);
  if (n == 0) return j0;
  double jm1 = j0, jk = j1;
  for (int k = 1; k < n; ++k) {
    const double jp1 = (2.0 * k / x) * jk - jm1;
    jm1 = jk;
    jk = jp1;
  }
  return jk;
}

double bessel_j_prime_zero(int n) {
  n = std::abs(n);
  auto dj = [n](double x) { return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x)); };
  double a = (n == 0) ? 0.5 : 0.5 * n + 0.1;
  double fa = dj(a);
  double b = a;
  for (;;) {
    b = a + 0.05;
    if (fa * dj(b) <= 0.0) break;
    a = b;
    fa = dj(a);
  }
  for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
    const double mid = 0.5 * (a + b);
    if (fa * dj(mid) <= 0.0) {
      b = mid;
    } else {
      a = mid;
      fa = dj(a);
    }
  }
  return 0.5 * (a + b);
}

double laguerre(int n, double alpha, double x) {
  if (n < 0) throw DomainError("Laguerre degree must be non-negative");
  double lm1 = 0.0, l = 1.0;
  for (int k = 0; k < n; ++k) {
    const double lp1 = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

GaussLegendre gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  GaussLegendre rule{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  // Legendre P_n and P_n' at x by the three-term recurrence.
  auto legendre = [n](double x, double& dp) {
    double pn = x, pm1 = 1.0;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * pn - (k - 1.0) * pm1) / k;
      pm1 = pn;
      pn = pk;
    }
    dp = n * (x * pn - pm1) / (x * x - 1.0);
    return pn;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 5e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace twist
