#pragma once

#include <vector>

namespace twist {

/// Bessel function of the first kind J_n(x) for integer n and real x.
double bessel_j(int n, double x);
/// First positive zero of d/dx J_n(x) (n >= 1: the first intensity ring of J_n).
double bessel_j_prime_zero(int n);
/// Generalized Laguerre polynomial L_n^alpha(x).
double laguerre(int n, double alpha, double x);

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// n-point Gauss-Legendre rule mapped onto [a, b].
GaussLegendre gauss_legendre(int n, double a = -1.0, double b = 1.0);

}  // namespace twist
