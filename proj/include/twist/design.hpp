#pragma once

#include <string>
#include <vector>

#include "twist/kinematics.hpp"

namespace twist {

/// z_F = D^2 / lambda.
double fraunhofer_distance(double D, double lambda);
/// z_F with D = L / sqrt(3) for an equilateral triangle of side L.
double triangle_fraunhofer_distance(double L, double lambda);

struct DesignConstraint {
  double Delta;
  double C = 10.0;
  double lambda;
};

struct GeometryOptimum {
  double L_opt;
  double z_opt;
};

/// Brightest geometry at fixed detector pitch under z >= C (L/sqrt(3))^2 / lambda.
GeometryOptimum optimize_geometry(const DesignConstraint& c);

/// Node brightness on a common arbitrary scale, L^4 / (lambda z)^2.
double node_intensity(double L, double z, double lambda);
/// Same quantity at fixed pitch: L^2 / Delta^2 (times the common factor 4/3).
double node_intensity_at_pitch(double L, double Delta);

struct DesignInput {
  ParticleSpecies species;
  double E_kin;   // eV (per nucleon for ions)
  double sigma0;  // m
  double L;       // m
  double d_sa;    // m
  double z;       // m
  int n = 3;
  int ell = 5;
};

struct DesignRow {
  DesignInput input;
  double lambda;
  double Delta;
  double p_min;
  double image_width;
  double image_height;
  double z_F;
  /// rms radius of the packet at the aperture.
  double rms_at_aperture;
  bool coherent;
  bool far_field;
};

/// Image size is the bounding box of the equilateral spot triangle of side
/// |l| Delta plus one pitch.
std::vector<DesignRow> generate_design_table(const std::vector<DesignInput>& rows);

/// Rows of the representative-geometry table (species, energy, width, L, d_sa, z).
std::vector<DesignInput> representative_geometries();

}  // namespace twist
