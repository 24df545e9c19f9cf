#pragma once

#include <complex>
#include <cstdlib>
#include <variant>

#include "twist/kinematics.hpp"

namespace twist {

using cplx = std::complex<double>;

/// Ideal Bessel mode J_|l|(kappa rho) e^{i l phi} e^{i k_z z}.
struct BesselBeam {
  int ell;
  double kappa;  // 1/m
  double k_z;    // 1/m

  double wavenumber() const;
};

/// Build a Bessel mode from a transverse momentum quoted as p_perp c in eV.
/// Throws PreconditionError unless kappa/k_z < paraxial_limit.
BesselBeam make_bessel(int ell, double p_perp_c, const Kinematics& kin, double paraxial_limit = 0.1);
BesselBeam make_bessel_kappa(int ell, double kappa, const Kinematics& kin, double paraxial_limit = 0.1);

cplx bessel_field(const BesselBeam& beam, double rho, double phi, double z);

/// Radial wavenumber placing the first non-trivial extremum of J_|l| at `radius`.
double matched_kappa(int ell, double radius);

/// Laguerre-Gaussian packet with radial index n and waist sigma0 at z = 0.
class LGPacket {
 public:
  /// Throws PreconditionError unless sigma0 > paraxial_factor * lambda.
  LGPacket(int ell, int n, double sigma0, const Kinematics& kin, double paraxial_factor = 10.0);

  int ell() const { return ell_; }
  int radial_index() const { return n_; }
  /// Beam-quality factor 2n + |l| + 1.
  int quality() const { return 2 * n_ + std::abs(ell_) + 1; }
  double sigma0() const { return sigma0_; }
  const Kinematics& kinematics() const { return kin_; }
  double wavenumber() const { return k_; }
  double wavelength() const { return kin_.de_broglie_wavelength; }
  /// Drift over which the packet width grows by sqrt(2): k sigma0^2.
  double rayleigh_length() const { return k_ * sigma0_ * sigma0_; }
  /// Mode-scaled length (2 pi / M) sigma0^2 / lambda, reported by the design tables.
  double mode_rayleigh_length() const;
  double normalization() const { return norm_; }

 private:
  int ell_;
  int n_;
  double sigma0_;
  Kinematics kin_;
  double k_;
  double norm_;
};

double lg_width(const LGPacket& packet, double z);
cplx lg_field(const LGPacket& packet, double rho, double phi, double z);
double gouy_phase(const LGPacket& packet, double z);
/// sqrt(<rho^2>) = sigma(z) sqrt(M).
double rms_radius(const LGPacket& packet, double z);
/// Far-field rms radius z lambda M / (2 pi rms(0)). Throws PreconditionError
/// unless z > far_factor * rayleigh_length.
double far_field_rms(const LGPacket& packet, double z, double far_factor = 10.0);
/// True when the packet has spread to at least D at the aperture.
bool coherence_ok(const LGPacket& packet, double d_sa, double D);

/// Incident field as seen in an aperture plane: a Bessel mode (evaluated at
/// z = 0) or an LG packet that has drifted d_sa from its waist.
struct LGIncidence {
  LGPacket packet;
  double d_sa;
};
using IncidentBeam = std::variant<BesselBeam, LGIncidence>;

cplx incident_amplitude(const IncidentBeam& beam, double x, double y);
double incident_wavenumber(const IncidentBeam& beam);
/// k_z in the obliquity factor: the Bessel longitudinal wavenumber, k for LG.
double incident_kz(const IncidentBeam& beam);
int incident_ell(const IncidentBeam& beam);
/// Largest phase excursion of the incident field across a disk of radius r,
/// radial and azimuthal parts, used by the quadrature sampling rule.
double incident_radial_phase(const IncidentBeam& beam, double r);

}  // namespace twist
