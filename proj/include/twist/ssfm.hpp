#pragma once

#include <variant>
#include <vector>

#include "twist/aperture.hpp"
#include "twist/field.hpp"
#include "twist/kernels.hpp"

namespace twist {

struct FreeDrift {
  double dz;
};

struct MaskStep {
  Aperture aperture;
  double smoothing_width = 0.0;
  /// Sub-samples per cell side for area-coverage sampling of a hard edge.
  int supersample = 1;
};

using PlanStep = std::variant<FreeDrift, MaskStep>;

struct PropagationPlan {
  double k;
  std::vector<PlanStep> steps;
};

struct DriftOptions {
  /// Refuse when the spectral power in the outer `guard_band` of each axis
  /// exceeds this fraction of the total. A hard-edged mask of side L keeps
  /// roughly dx/L of its power there however fine the grid.
  double guard_fraction = 0.05;
  double guard_band = 0.1;
  /// Warn when the field on the grid boundary exceeds this fraction of the peak.
  double boundary_fraction = 1e-6;
  /// Split drifts longer than this into equal sub-steps (0 = one exact step).
  double max_step = 0.0;
  /// Super-Gaussian absorbing layer over the outer 10% of the grid (off by default).
  bool absorbing_boundary = false;
  Exec exec = Exec::parallel;
};

/// Paraxial free-space drift by the exact diagonal spectral propagator.
ComplexField2D drift(const ComplexField2D& field, double dz, double k, const DriftOptions& opt = {});
/// Thin-mask insertion. Throws GeometryError unless the aperture leaves a
/// 25% margin of the grid footprint on every side.
ComplexField2D apply_mask(const ComplexField2D& field, const Aperture& ap, double smoothing_width,
                          int supersample = 1, Exec exec = Exec::parallel);
ComplexField2D run_plan(const ComplexField2D& initial, const PropagationPlan& plan, const DriftOptions& opt = {});

/// Fraction of spectral power in the outer band of the grid's frequency window.
double outer_band_fraction(const ComplexField2D& field, double band);

}  // namespace twist
