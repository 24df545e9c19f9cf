#pragma once

#include <cstdint>
#include <vector>

#include "twist/field.hpp"

namespace twist {

struct Window {
  double x_min, x_max;
  double y_min, y_max;
};

/// Flux fraction per detector bin; bin (i, j) covers
/// [origin.x + i p, origin.x + (i+1) p] x [origin.y + j p, origin.y + (j+1) p].
struct DetectorImage {
  int nx = 0;
  int ny = 0;
  double pixel_pitch = 0.0;
  Vec2 origin{};
  std::vector<double> P;
  double F_det = 0.0;
  bool undersampled = false;

  double at(int i, int j) const { return P[static_cast<size_t>(j) * nx + i]; }
};

struct BeamBudget {
  double Q;         // C per pulse
  double f_rep;     // 1/s
  double eta;       // quantum efficiency
  int Z = 1;        // charge state
  double exposure;  // s
};

/// Area-weighted integration of an intensity density (flux per area) into
/// square bins covering the window; the last row/column is clipped to it.
DetectorImage bin_field(const IntensityMap& intensity, double pixel_pitch, const Window& window);
/// Marks the image under-sampled when the pitch exceeds lattice_pitch / 3.
void flag_sampling(DetectorImage& image, double lattice_pitch);

/// Detected particles per second per unit acceptance: eta Q f_rep / (Z e).
double particle_rate(const BeamBudget& budget);
double total_rate(const BeamBudget& budget, double F_det);
std::vector<double> expected_counts(const DetectorImage& image, const BeamBudget& budget);
/// N / R. Throws PreconditionError for R = 0 (never accumulates).
double time_to_counts(double N, double R_tot);
/// Poisson draw per bin from a seeded 64-bit Mersenne twister.
std::vector<double> poisson_sample(const std::vector<double>& expected, std::uint64_t seed);

}  // namespace twist
