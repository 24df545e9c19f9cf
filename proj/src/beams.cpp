#include "twist/beams.hpp"

#include <cmath>
#include <string>

#include "twist/constants.hpp"
#include "twist/errors.hpp"
#include "twist/special.hpp"

namespace twist {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

double BesselBeam::wavenumber() const { return std::hypot(kappa, k_z); }

BesselBeam make_bessel_kappa(int ell, double kappa, const Kinematics& kin, double paraxial_limit) {
  const double k = kin.wavenumber();
  if (!(kappa > 0.0) || !(kappa < k)) throw DomainError("Bessel kappa must lie in (0, k)");
  const double kz = std::sqrt((k - kappa) * (k + kappa));
  if (!(kappa / kz < paraxial_limit))
    throw PreconditionError("Bessel beam not paraxial: kappa/k_z = " + std::to_string(kappa / kz));
  return {ell, kappa, kz};
}

BesselBeam make_bessel(int ell, double p_perp_c, const Kinematics& kin, double paraxial_limit) {
  return make_bessel_kappa(ell, p_perp_c / constants::hbar_c, kin, paraxial_limit);
}

cplx bessel_field(const BesselBeam& beam, double rho, double phi, double z) {
  const double amp = bessel_j(std::abs(beam.ell), beam.kappa * rho);
  return amp * std::polar(1.0, beam.ell * phi + beam.k_z * z);
}

double matched_kappa(int ell, double radius) {
  if (!(radius > 0.0)) throw DomainError("matched_kappa needs a positive radius");
  return bessel_j_prime_zero(std::abs(ell)) / radius;
}

LGPacket::LGPacket(int ell, int n, double sigma0, const Kinematics& kin, double paraxial_factor)
    : ell_(ell), n_(n), sigma0_(sigma0), kin_(kin), k_(kin.wavenumber()) {
  if (n < 0) throw DomainError("LG radial index must be non-negative");
  if (!(sigma0 > paraxial_factor * kin.de_broglie_wavelength))
    throw PreconditionError("LG packet not paraxial: sigma0 must exceed " +
                            std::to_string(paraxial_factor) + " de Broglie wavelengths");
  const int a = std::abs(ell);
  norm_ = std::sqrt(std::exp(log_factorial(n) - log_factorial(n + a)) / constants::pi);
}

double LGPacket::mode_rayleigh_length() const {
  return constants::two_pi / quality() * sigma0_ * sigma0_ / kin_.de_broglie_wavelength;
}

double lg_width(const LGPacket& packet, double z) {
  const double tau = z / packet.rayleigh_length();
  return packet.sigma0() * std::sqrt(1.0 + tau * tau);
}

cplx lg_field(const LGPacket& packet, double rho, double phi, double z) {
  const int a = std::abs(packet.ell());
  const double tau = z / packet.rayleigh_length();
  const double sigma = packet.sigma0() * std::sqrt(1.0 + tau * tau);
  const double u = rho / sigma;
  const double radial = packet.normalization() * std::pow(u, a) / sigma *
                        laguerre(packet.radial_index(), a, u * u) * std::exp(-0.5 * u * u);
  const double phase = packet.ell() * phi + 0.5 * u * u * tau - packet.quality() * std::atan(tau);
  return radial * std::polar(1.0, phase);
}

double gouy_phase(const LGPacket& packet, double z) {
  return packet.quality() * std::atan(z / packet.rayleigh_length());
}

double rms_radius(const LGPacket& packet, double z) {
  return lg_width(packet, z) * std::sqrt(static_cast<double>(packet.quality()));
}

double far_field_rms(const LGPacket& packet, double z, double far_factor) {
  if (!(z > far_factor * packet.rayleigh_length()))
    throw PreconditionError("far_field_rms needs z > " + std::to_string(far_factor) +
                            " Rayleigh lengths");
  return z * packet.wavelength() * packet.quality() / (constants::two_pi * rms_radius(packet, 0.0));
}

bool coherence_ok(const LGPacket& packet, double d_sa, double D) {
  return rms_radius(packet, d_sa) >= D;
}

cplx incident_amplitude(const IncidentBeam& beam, double x, double y) {
  const double rho = std::hypot(x, y), phi = std::atan2(y, x);
  if (const auto* b = std::get_if<BesselBeam>(&beam)) return bessel_field(*b, rho, phi, 0.0);
  const auto& lg = std::get<LGIncidence>(beam);
  return lg_field(lg.packet, rho, phi, lg.d_sa);
}

double incident_wavenumber(const IncidentBeam& beam) {
  if (const auto* b = std::get_if<BesselBeam>(&beam)) return b->wavenumber();
  return std::get<LGIncidence>(beam).packet.wavenumber();
}

double incident_kz(const IncidentBeam& beam) {
  if (const auto* b = std::get_if<BesselBeam>(&beam)) return b->k_z;
  return std::get<LGIncidence>(beam).packet.wavenumber();
}

int incident_ell(const IncidentBeam& beam) {
  if (const auto* b = std::get_if<BesselBeam>(&beam)) return b->ell;
  return std::get<LGIncidence>(beam).packet.ell();
}

double incident_radial_phase(const IncidentBeam& beam, double r) {
  if (const auto* b = std::get_if<BesselBeam>(&beam)) return b->kappa * r;
  const auto& lg = std::get<LGIncidence>(beam);
  const double tau = lg.d_sa / lg.packet.rayleigh_length();
  const double sigma = lg_width(lg.packet, lg.d_sa);
  // wavefront curvature plus the Laguerre/Gaussian envelope structure
  return 0.5 * r * r * tau / (sigma * sigma) + 2.0 * lg.packet.radial_index() + r / sigma;
}

}  // namespace twist
