#pragma once

/// Physical constants (CODATA 2018) and unit multipliers to SI.
/// Energies are carried in electron-volts; everything else is SI.
namespace twist::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double c = 299792458.0;                  // m/s
inline constexpr double e = 1.602176634e-19;              // C
inline constexpr double hbar_c = 197.3269804e-9;          // eV m
inline constexpr double h_c = two_pi * hbar_c;            // eV m

inline constexpr double electron_rest_energy = 0.51099895000e6;  // eV
inline constexpr double proton_rest_energy = 938.27208816e6;     // eV
inline constexpr double atomic_mass_energy = 931.49410242e6;     // eV

}  // namespace twist::constants

namespace twist::units {

inline constexpr double eV = 1.0;
inline constexpr double keV = 1.0e3;
inline constexpr double MeV = 1.0e6;

inline constexpr double m = 1.0;
inline constexpr double mm = 1.0e-3;
inline constexpr double um = 1.0e-6;
inline constexpr double nm = 1.0e-9;
inline constexpr double pm = 1.0e-12;
inline constexpr double fm = 1.0e-15;

inline constexpr double pC = 1.0e-12;
inline constexpr double Hz = 1.0;
inline constexpr double s = 1.0;

}  // namespace twist::units
