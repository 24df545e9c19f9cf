#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "twist/aperture.hpp"
#include "twist/beams.hpp"
#include "twist/detector.hpp"
#include "twist/field.hpp"

namespace twist::cli {

/// Malformed or inconsistent scenario; `path` names the offending field.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Dimension { length, energy, charge, frequency, time, angle };

/// "400 nm", "1 MeV", "15eV", or a bare number in SI base units (eV for energy).
double parse_quantity(const std::string& text, Dimension dim);
std::string format_quantity(double value, Dimension dim);

struct BeamSpec {
  std::string family = "bessel";  // bessel | lg
  std::string species = "electron";
  double energy = 0.0;  // eV, per nucleon for ions
  int ell = 0;
  int n = 0;
  bool kappa_matched = false;
  double kappa = 0.0;   // transverse momentum p_perp c in eV
  double sigma0 = 0.0;  // m
};

struct ApertureSpec {
  std::string shape = "triangle";  // triangle | circle
  double size = 0.0;               // side L or radius a
  double orientation = 0.0;        // rad
  Vec2 center{};
};

struct PlaneSpec {
  double half_width = 0.0;  // 0 picks a default from the geometry
  int n = 128;
};

struct NumericsSpec {
  int samples_across = 64;  // aperture samples across its diameter
  int fft_grid = 256;
  int pad = 8;
  int ssfm_grid = 2048;
  int ssfm_per_side = 16;
  int supersample = 4;
};

struct BudgetSpec {
  BeamBudget budget{};
  double pixel = 0.0;
  std::optional<std::uint64_t> seed;
};

struct OutputSpec {
  std::string tone = "log";  // log | linear
  int bits = 8;
  double clip_db = -20.0;
};

struct Scenario {
  std::string name;
  BeamSpec beam;
  ApertureSpec aperture;
  double d_sa = 0.0;
  double z = 0.0;
  std::string method = "kirchhoff";  // kirchhoff | fraunhofer | ssfm | all
  PlaneSpec plane;
  NumericsSpec numerics;
  std::optional<BudgetSpec> budget;
  OutputSpec output;
  bool mirror_check = false;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& file);
/// Normalized form; parse_scenario(to_json(s)) reproduces s exactly.
nlohmann::json to_json(const Scenario& s);

ParticleSpecies species_of(const Scenario& s);
Kinematics kinematics_of(const Scenario& s);
Aperture aperture_of(const Scenario& s);
IncidentBeam beam_of(const Scenario& s, int ell);

}  // namespace twist::cli
