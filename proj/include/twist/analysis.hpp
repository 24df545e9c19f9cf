#pragma once

#include <vector>

#include "twist/field.hpp"

namespace twist {

/// Pearson correlation of two equally long sample sets.
double pearson(const std::vector<double>& a, const std::vector<double>& b);
double pearson(const IntensityMap& a, const IntensityMap& b);

/// Reflect about the vertical line through the grid centre (x -> -x).
IntensityMap mirror_x(const IntensityMap& map);
/// Point inversion through the grid centre (x, y) -> (-x, -y).
IntensityMap invert(const IntensityMap& map);
/// Rotate by `angle` about the grid centre with bilinear resampling.
IntensityMap rotate(const IntensityMap& map, double angle);

struct Peak {
  int i;
  int j;
  Vec2 position;
  double value;
};
/// 8-neighbour local maxima at or above rel_threshold * global maximum.
std::vector<Peak> find_peaks(const IntensityMap& map, double rel_threshold);

struct LobeAnalysis {
  std::vector<Peak> peaks;
  int lobes_per_side = 0;
  /// Outward normal of the fullest outer row (radians).
  double side_direction = 0.0;
};
/// Count the bright spots along the outer rows of a triangular spot lattice.
/// Rows are taken normal to the six directions orientation + j 60 deg, with
/// `orientation` the triangle's rotation away from the default pose.
LobeAnalysis count_lobes(const IntensityMap& map, double orientation, double rel_threshold = 0.35);

struct Profile {
  std::vector<double> s;
  std::vector<double> value;
};
/// Samples map(center + s dir) s^power for s in [0, s_max].
Profile radial_profile(const IntensityMap& map, Vec2 center, Vec2 dir, double s_max, int samples,
                       double power = 0.0);
/// Positions of profile maxima whose prominence is at least rel_prominence
/// times the profile maximum.
std::vector<double> profile_maxima(const Profile& p, double rel_prominence);

/// Spot spacing along a lattice direction: maxima of the s^2-compensated
/// profile from `center`, averaged over the second to fifth maximum.
/// Throws PreconditionError when fewer than five maxima are found.
double ridge_pitch(const IntensityMap& map, Vec2 center, Vec2 dir, double s_max, int samples = 4096,
                   double rel_prominence = 0.01);

/// Phase winding of a complex field around a circle (integer for a vortex).
int winding_number(const ComplexField2D& field, Vec2 center, double radius, int samples = 720);
/// sqrt(<|r - r_c|^2>) of an intensity map about its centroid.
double rms_width(const IntensityMap& map);
Vec2 centroid(const IntensityMap& map);

}  // namespace twist
