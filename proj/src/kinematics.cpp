#include "twist/kinematics.hpp"

#include <cmath>

#include "twist/constants.hpp"
#include "twist/errors.hpp"

namespace twist {

namespace k = constants;

ParticleSpecies ParticleSpecies::electron() { return {"electron", k::electron_rest_energy, 1, 0}; }

ParticleSpecies ParticleSpecies::proton() { return {"proton", k::proton_rest_energy, 1, 1}; }

ParticleSpecies ParticleSpecies::carbon12() { return ion("carbon12", 12, 6); }

ParticleSpecies ParticleSpecies::ion(const std::string& name, int mass_number, int charge_state) {
  if (mass_number < 1 || charge_state < 1)
    throw DomainError("ion needs mass_number >= 1 and charge_state >= 1");
  const double rest = mass_number * k::atomic_mass_energy - charge_state * k::electron_rest_energy;
  return {name, rest, charge_state, mass_number};
}

ParticleSpecies ParticleSpecies::from_name(const std::string& name) {
  if (name == "electron" || name == "e-") return electron();
  if (name == "proton" || name == "H+") return proton();
  if (name == "carbon12" || name == "C6+") return carbon12();
  throw DomainError("unknown species '" + name + "'");
}

double ParticleSpecies::total_kinetic(double E_kin) const {
  return mass_number > 0 ? E_kin * mass_number : E_kin;
}

double Kinematics::wavenumber() const { return momentum / k::hbar_c; }

double momentum_from_kinetic(const ParticleSpecies& species, double E_kin) {
  if (!(E_kin >= 0.0)) throw DomainError("kinetic energy must be non-negative");
  const double E = species.total_kinetic(E_kin);
  return std::sqrt(E * (E + 2.0 * species.rest_energy));
}

double de_broglie(double pc) {
  if (!(pc > 0.0)) throw DomainError("momentum must be positive for a de Broglie wavelength");
  return k::h_c / pc;
}

Kinematics make_kinematics(const ParticleSpecies& species, double E_kin) {
  const double pc = momentum_from_kinetic(species, E_kin);
  const double E = species.total_kinetic(E_kin);
  const double total = E + species.rest_energy;
  return {species, E, pc, de_broglie(pc), k::c * pc / total};
}

}  // namespace twist
