#pragma once

#include <string>

namespace twist {

/// Rest energy and charge of a beam particle. mass_number is 0 for leptons;
/// for ions it scales the per-nucleon kinetic energy.
struct ParticleSpecies {
  std::string name;
  double rest_energy;  // eV
  int charge_state;
  int mass_number;

  static ParticleSpecies electron();
  static ParticleSpecies proton();
  /// Fully stripped 12C (rest energy of the bare nucleus).
  static ParticleSpecies carbon12();
  /// Ion of mass number A stripped to charge Z; rest energy from atomic mass units
  /// minus the removed electrons.
  static ParticleSpecies ion(const std::string& name, int mass_number, int charge_state);
  static ParticleSpecies from_name(const std::string& name);

  bool is_ion() const { return mass_number > 0; }
  /// Total kinetic energy for a quoted kinetic energy (per nucleon for ions).
  double total_kinetic(double E_kin) const;
};

struct Kinematics {
  ParticleSpecies species;
  double kinetic_energy;          // eV, total
  double momentum;                // pc in eV
  double de_broglie_wavelength;   // m
  double mean_speed;              // m/s

  double wavenumber() const;      // p / hbar in 1/m
};

/// pc in eV. E_kin is per nucleon for ions.
double momentum_from_kinetic(const ParticleSpecies& species, double E_kin);
/// Wavelength 2 pi hbar / p for pc given in eV.
double de_broglie(double pc);
Kinematics make_kinematics(const ParticleSpecies& species, double E_kin);

}  // namespace twist
