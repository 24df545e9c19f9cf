#include "twist/design.hpp"

#include <algorithm>
#include <cmath>

#include "twist/aperture.hpp"
#include "twist/beams.hpp"
#include "twist/constants.hpp"
#include "twist/errors.hpp"

namespace twist {

double fraunhofer_distance(double D, double lambda) {
  if (!(D > 0.0 && lambda > 0.0)) throw DomainError("fraunhofer_distance needs D > 0 and lambda > 0");
  return D * D / lambda;
}

double triangle_fraunhofer_distance(double L, double lambda) { return fraunhofer_distance(L / std::sqrt(3.0), lambda); }

GeometryOptimum optimize_geometry(const DesignConstraint& c) {
  if (!(c.Delta > 0.0) || !(c.C >= 1.0) || !(c.lambda > 0.0))
    throw DomainError("design constraint needs Delta > 0, C >= 1, lambda > 0");
  const double L = std::sqrt(3.0) / (2.0 * c.C) * c.Delta;
  const double z = 3.0 / (4.0 * c.C) * c.Delta * c.Delta / c.lambda;
  const double tol = 1e-12;
  if (std::abs(detector_pitch(L, c.lambda, z) / c.Delta - 1.0) > tol ||
      std::abs(c.C * fraunhofer_distance(L, c.lambda) / z - 1.0) > tol)
    throw PreconditionError("optimum fails its own pitch or far-field postcondition");
  return {L, z};
}

double node_intensity(double L, double z, double lambda) {
  if (!(L >= 0.0 && z > 0.0 && lambda > 0.0)) throw DomainError("node_intensity needs L >= 0, z > 0, lambda > 0");
  const double lz = lambda * z;
  return L * L * L * L / (lz * lz);
}

double node_intensity_at_pitch(double L, double Delta) {
  if (!(L >= 0.0 && Delta > 0.0)) throw DomainError("node_intensity needs L >= 0 and Delta > 0");
  return 4.0 / 3.0 * L * L / (Delta * Delta);
}

std::vector<DesignRow> generate_design_table(const std::vector<DesignInput>& rows) {
  std::vector<DesignRow> out;
  out.reserve(rows.size());
  for (const auto& in : rows) {
    const Kinematics kin = make_kinematics(in.species, in.E_kin);
    const double lambda = kin.de_broglie_wavelength;
    DesignRow r{in, lambda, 0, 0, 0, 0, 0, 0, false, false};
    r.Delta = detector_pitch(in.L, lambda, in.z);
    r.p_min = r.Delta / 3.0;
    // spot triangle on the 60 degree pair (g1, g1 + g2): side |l| Delta
    const auto b = reciprocal_basis(TriangleAperture::equilateral(in.L));
    const Vec2 a1 = b.g1, a2 = b.g1 + b.g2;
    const double scale = lambda * in.z / constants::two_pi;
    const int ell = std::abs(in.ell);
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    for (const Vec2 k : {(scale * ell) * a1, (scale * ell) * a2}) {
      x0 = std::min(x0, k.x);
      x1 = std::max(x1, k.x);
      y0 = std::min(y0, k.y);
      y1 = std::max(y1, k.y);
    }
    r.image_width = x1 - x0 + r.Delta;
    r.image_height = y1 - y0 + r.Delta;
    r.z_F = triangle_fraunhofer_distance(in.L, lambda);
    r.far_field = in.z >= r.z_F;
    const LGPacket packet(in.ell, in.n, in.sigma0, kin);
    r.rms_at_aperture = rms_radius(packet, in.d_sa);
    r.coherent = coherence_ok(packet, in.d_sa, in.L / std::sqrt(3.0));
    out.push_back(r);
  }
  return out;
}

std::vector<DesignInput> representative_geometries() {
  using namespace units;
  const auto e = ParticleSpecies::electron();
  const auto p = ParticleSpecies::proton();
  const auto c = ParticleSpecies::carbon12();
  return {
      {p, 1.0 * MeV, 10 * pm, 40 * nm, 0.1, 2.0},
      {p, 1.0 * MeV, 10 * pm, 200 * nm, 1.0, 2.0},
      {c, 1.0 * MeV, 10 * pm, 40 * nm, 0.1, 2.0},
      {e, 100 * keV, 10 * nm, 400 * nm, 0.04, 0.2},
      {e, 1.0 * MeV, 10 * nm, 400 * nm, 0.08, 1.0},
      {e, 3.0 * MeV, 10 * nm, 400 * nm, 0.15, 2.0},
  };
}

}  // namespace twist
