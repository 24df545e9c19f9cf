#pragma once

#include <complex>
#include <vector>

#include "twist/aperture.hpp"
#include "twist/field.hpp"

namespace twist {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// loop; `parallel` is the same arithmetic distributed with OpenMP and gives
/// bit-identical results.
enum class Exec { serial, parallel };

namespace kernels {

/// Quadrature node in the aperture plane carrying weight x incident amplitude.
struct Source {
  double x;
  double y;
  std::complex<double> weight;
};

struct KirchhoffParams {
  double k;
  double k_z;
  double z;
};

/// out[j*nx+i] = sum_s w_s exp(ik(R-z)) / (4 pi R) [(ik - 1/R) z/R + i k_z],
/// R the distance from source s to target (i, j) at height z.
void kirchhoff_sum(const std::vector<Source>& sources, const Grid2D& targets,
                   const KirchhoffParams& p, std::complex<double>* out, Exec exec);

/// Multiply an unshifted nx x ny spectrum by exp(-i (cx qx^2 + cy qy^2)),
/// q = 2 pi m / N the signed bin frequency in radians per sample.
void drift_phase(std::complex<double>* spectrum, int nx, int ny, double cx, double cy, Exec exec);

/// Sample the aperture transmission on a grid. With supersample > 1 each
/// cell value is the mean over supersample^2 sub-points (area coverage).
void sample_mask(const Aperture& ap, const Grid2D& grid, double smoothing_width, int supersample,
                 double* out, Exec exec);

/// values[i] *= mask[i].
void multiply(std::complex<double>* values, const double* mask, size_t n, Exec exec);

}  // namespace kernels
}  // namespace twist
