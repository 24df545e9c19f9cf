#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "twist/acceptance.hpp"
#include "twist/analysis.hpp"
#include "twist/constants.hpp"
#include "twist/design.hpp"
#include "twist/errors.hpp"
#include "twist/kirchhoff.hpp"
#include "twist/ssfm.hpp"

namespace twist::cli {

using nlohmann::json;
using namespace units;

namespace {

struct Pattern {
  IntensityMap map;
  std::vector<std::string> warnings;
};

double default_half_width(const Scenario& s, const IncidentBeam& beam, double lambda) {
  const int ell = std::abs(s.beam.ell);
  if (s.aperture.shape == "triangle") return (ell + 3) * detector_pitch(s.aperture.size, lambda, s.z);
  double ring = 0.0;
  if (const auto* b = std::get_if<BesselBeam>(&beam)) ring = b->kappa / b->wavenumber() * s.z;
  return 1.5 * ring + (ell + 3) * lambda * s.z / (2 * s.aperture.size);
}

double characteristic_size(const Scenario& s) {
  return s.aperture.shape == "triangle" ? s.aperture.size : 2 * s.aperture.size;
}

Pattern compute(const Scenario& s, const std::string& method, int ell, const ObservationPlane& plane) {
  const Kinematics kin = kinematics_of(s);
  const double lam = kin.de_broglie_wavelength;
  const Aperture ap = aperture_of(s);
  const IncidentBeam beam = beam_of(s, ell);
  const auto& nm = s.numerics;
  Pattern p;
  if (method == "kirchhoff") {
    const auto f = kirchhoff(beam, ap, plane);
    p.map = intensity(f);
    p.warnings = f.meta.warnings;
  } else if (method == "fraunhofer") {
    const double d = 2 * aperture_extent(ap) / nm.samples_across;
    const auto af = sample_aperture_field(beam, ap, aperture_grid(ap, d, nm.fft_grid), 0.0, nm.supersample);
    const auto f = fraunhofer_fft(af, lam, s.z, plane, nm.pad);
    p.map = intensity(f);
    p.warnings = f.meta.warnings;
  } else {
    ComplexField2D in(Grid2D::centered(nm.ssfm_grid, characteristic_size(s) / nm.ssfm_per_side));
    for (int j = 0; j < in.ny(); ++j)
      for (int i = 0; i < in.nx(); ++i) in.at(i, j) = incident_amplitude(beam, in.x(i), in.y(j));
    const auto f = run_plan(in, {kin.wavenumber(), {MaskStep{ap, 0.0, nm.supersample}, FreeDrift{s.z}}});
    p.map = resample(intensity(f), plane.grid());
    // same convention as the other paths: unit flux through the open aperture
    const double transmitted = f.meta.flux_history.at(1);
    if (!(transmitted > 0.0)) throw PreconditionError("no flux passes the aperture on the split-step grid");
    for (auto& v : p.map.values) v /= transmitted;
    p.warnings = f.meta.warnings;
  }
  return p;
}

// Reflection about the triangle's symmetry axis at the given orientation.
IntensityMap mirror_about(const IntensityMap& m, double orientation) {
  if (orientation == 0.0) return mirror_x(m);
  return rotate(mirror_x(rotate(m, -orientation)), orientation);
}

Grid top_down(int nx, int ny, const std::vector<double>& v) {
  Grid g{nx, ny, std::vector<double>(v.size())};
  for (int j = 0; j < ny; ++j)
    std::copy_n(v.begin() + static_cast<long>(j) * nx, nx, g.values.begin() + static_cast<long>(ny - 1 - j) * nx);
  return g;
}

json extents_um(double x0, double x1, double y0, double y1) {
  return {{"x_min", x0 / um}, {"x_max", x1 / um}, {"y_min", y0 / um}, {"y_max", y1 / um}};
}

}  // namespace

RunResult execute(const Scenario& s) {
  const Kinematics kin = kinematics_of(s);
  const double lam = kin.de_broglie_wavelength;
  const Aperture ap = aperture_of(s);
  const IncidentBeam beam = beam_of(s, s.beam.ell);
  const double zF = fraunhofer_distance(aperture_extent(ap), lam);
  if (s.method == "all" && s.z < zF)
    throw ScenarioError("method", "\"all\" compares far-field methods and needs z >= z_F = " + std::to_string(zF) + " m");

  const double half = s.plane.half_width > 0.0 ? s.plane.half_width : default_half_width(s, beam, lam);
  const auto plane = ObservationPlane::square(s.z, half, s.plane.n);
  const bool triangle = s.aperture.shape == "triangle";

  json meta;
  meta["scenario"] = to_json(s);
  json derived{{"wavelength_m", lam},
               {"wavenumber_per_m", kin.wavenumber()},
               {"momentum_eV", kin.momentum},
               {"z_F_m", zF},
               {"far_field", s.z >= zF}};
  if (triangle) derived["Delta_um"] = detector_pitch(s.aperture.size, lam, s.z) / um;
  if (const auto* b = std::get_if<BesselBeam>(&beam)) derived["kappa_per_m"] = b->kappa;
  if (const auto* g = std::get_if<LGIncidence>(&beam)) {
    derived["rayleigh_length_m"] = g->packet.rayleigh_length();
    derived["rms_radius_at_aperture_m"] = rms_radius(g->packet, g->d_sa);
  }
  meta["derived"] = derived;
  meta["normalization"] = "unit incident flux through the open aperture; intensity in 1/m^2";
  meta["carrier"] = "common factor exp(i k z) omitted";

  const std::string primary_method = s.method == "all" ? "kirchhoff" : s.method;
  Pattern primary = compute(s, primary_method, s.beam.ell, plane);
  json warnings = json::array();
  for (const auto& w : primary.warnings) warnings.push_back(primary_method + ": " + w);

  if (s.method == "all") {
    json cm;
    const Pattern fr = compute(s, "fraunhofer", s.beam.ell, plane);
    const Pattern ss = compute(s, "ssfm", s.beam.ell, plane);
    for (const auto& w : fr.warnings) warnings.push_back("fraunhofer: " + w);
    for (const auto& w : ss.warnings) warnings.push_back("ssfm: " + w);
    cm["kirchhoff_vs_fraunhofer"] = pearson(primary.map, fr.map);
    cm["kirchhoff_vs_ssfm"] = pearson(primary.map, ss.map);
    cm["fraunhofer_vs_ssfm"] = pearson(fr.map, ss.map);
    meta["cross_method"] = cm;
  }

  if (triangle) {
    const auto lobes = count_lobes(primary.map, s.aperture.orientation);
    meta["lobes_per_side"] = lobes.lobes_per_side;
    meta["spots"] = lobes.peaks.size();
  }
  if (s.mirror_check) {
    const Pattern other = compute(s, primary_method, -s.beam.ell, plane);
    const double r = triangle ? pearson(mirror_about(primary.map, s.aperture.orientation), other.map)
                              : pearson(primary.map, other.map);
    meta["mirror"] = {{"relation", triangle ? "I(-l) = mirror of I(+l)" : "I(-l) = I(+l)"},
                      {"correlation", r},
                      {"threshold", 0.999},
                      {"passed", r >= 0.999}};
  }

  RunResult res;
  if (s.budget) {
    DetectorImage img = bin_field(primary.map, s.budget->pixel, {plane.x_min, plane.x_max, plane.y_min, plane.y_max});
    if (triangle) flag_sampling(img, detector_pitch(s.aperture.size, lam, s.z));
    auto counts = expected_counts(img, s.budget->budget);
    json det{{"pixel_um", img.pixel_pitch / um},
             {"F_det", img.F_det},
             {"R_tot_per_s", total_rate(s.budget->budget, img.F_det)},
             {"undersampled", img.undersampled}};
    double total = 0.0;
    if (s.budget->seed) {
      counts = poisson_sample(counts, *s.budget->seed);
      det["seed"] = *s.budget->seed;
      meta["quantity"] = "Poisson counts per pixel";
    } else {
      meta["quantity"] = "expected counts per pixel";
    }
    for (double c : counts) total += c;
    det["total_counts"] = total;
    meta["detector"] = det;
    res.grid = top_down(img.nx, img.ny, counts);
    const double x0 = img.origin.x, y0 = img.origin.y;
    meta["extents_um"] = extents_um(x0, std::min(x0 + img.nx * img.pixel_pitch, plane.x_max), y0,
                                    std::min(y0 + img.ny * img.pixel_pitch, plane.y_max));
  } else {
    meta["quantity"] = "intensity density at sample points";
    res.grid = top_down(primary.map.grid.nx, primary.map.grid.ny, primary.map.values);
    meta["extents_um"] = extents_um(plane.x_min, plane.x_max, plane.y_min, plane.y_max);
  }
  meta["grid"] = {{"nx", res.grid.nx}, {"ny", res.grid.ny}, {"row_order", "row 0 is the largest y"}};
  meta["warnings"] = warnings;
  res.meta = std::move(meta);
  return res;
}

void write_bundle(const Scenario& s, const RunResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir);
  const std::string csv = to_csv(r.grid);
  const std::string pgm = to_pgm(r.grid, s.output.bits, s.output.tone == "log" ? Tone::log : Tone::linear, s.output.clip_db);
  json meta = r.meta;
  meta["image"] = {{"format", "P5"}, {"bits", s.output.bits}, {"tone", s.output.tone}, {"clip_db", s.output.clip_db}};
  meta["checksums"] = {{"algorithm", "FNV-1a 64"}, {"csv", hex64(fnv1a(csv))}, {"pgm", hex64(fnv1a(pgm))}};
  const fs::path base = fs::path(dir) / s.name;
  AtomicWriter w;
  w.add(base.string() + ".csv", csv);
  w.add(base.string() + ".pgm", pgm);
  w.add(base.string() + ".meta.json", meta.dump(2) + "\n");
  w.commit();
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string design_table(const std::string& table, double C, const std::vector<double>& pitch_um,
                         std::vector<double> energies_MeV) {
  std::string out;
  if (table == "geometries") {
    out = "species,E_kin_MeV_per_u,sigma0_m,L_nm,d_sa_m,z_m,lambda_m,Delta_um,p_min_um,image_w_um,image_h_um,z_F_m,"
          "far_field,coherent\n";
    for (const auto& r : generate_design_table(representative_geometries())) {
      const auto& in = r.input;
      out += in.species.name + "," + num(in.E_kin / MeV) + "," + num(in.sigma0) + "," + num(in.L / nm) + "," +
             num(in.d_sa) + "," + num(in.z) + "," + num(r.lambda) + "," + num(r.Delta / um) + "," +
             num(r.p_min / um) + "," + num(r.image_width / um) + "," + num(r.image_height / um) + "," + num(r.z_F) +
             "," + (r.far_field ? "yes" : "no") + "," + (r.coherent ? "yes" : "no") + "\n";
    }
    return out;
  }
  const bool electrons = table == "electrons";
  if (energies_MeV.empty()) energies_MeV = electrons ? std::vector<double>{0.1, 1, 3} : std::vector<double>{1};
  const ParticleSpecies sp = electrons ? ParticleSpecies::electron() : ParticleSpecies::proton();
  out = "Delta_um,L_opt_nm";
  for (double e : energies_MeV) out += ",z_opt_m@" + num(e) + "MeV";
  out += "\n";
  for (double p : pitch_um) {
    std::string row = fixed2(p);
    bool first = true;
    for (double e : energies_MeV) {
      const auto o = optimize_geometry({p * um, C, make_kinematics(sp, e * MeV).de_broglie_wavelength});
      if (first) row += "," + fixed2(o.L_opt / nm);
      first = false;
      row += "," + fixed2(o.z_opt);
    }
    out += row + "\n";
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted matter-wave aperture diffraction"};
  app.require_subcommand(1);

  std::string scenario_file, out_dir = ".";
  auto* run = app.add_subcommand("run", "Compute a scenario and write csv, pgm and metadata");
  run->add_option("file", scenario_file, "Scenario (JSON)")->required();
  run->add_option("-o,--out", out_dir, "Output directory");

  std::string table, design_out;
  double C = 10.0;
  std::vector<double> pitch, energies;
  auto* design = app.add_subcommand("design", "Optimum geometry and representative design tables");
  design->add_option("--table", table, "electrons | protons | geometries")
      ->required()
      ->check(CLI::IsMember({"electrons", "protons", "geometries"}));
  design->add_option("--C", C, "Fraunhofer safety margin")->check(CLI::Range(1.0, 1e6));
  design->add_option("--pitch", pitch, "Target pitches in micrometres")->delimiter(',');
  design->add_option("--energy", energies, "Kinetic energies in MeV (per nucleon for ions)")->delimiter(',');
  design->add_option("-o,--out", design_out, "Write the table to a file instead of stdout");

  std::vector<int> tamper, only;
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  validate->add_option("--tamper", tamper, "Make the given criteria fail (harness check)");
  validate->add_option("--only", only, "Run only these criteria");

  std::string grid_a, grid_b;
  bool mirror = false;
  auto* compare = app.add_subcommand("compare", "Correlate two csv grids");
  compare->add_option("a", grid_a)->required();
  compare->add_option("b", grid_b)->required();
  compare->add_flag("--mirror", mirror, "Reflect the first grid left-right before comparing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : validation_failure;
  }

  try {
    if (*run) {
      const Scenario s = load_scenario(scenario_file);
      const RunResult r = execute(s);
      write_bundle(s, r, out_dir);
      out << (std::filesystem::path(out_dir) / (s.name + ".csv")).string() << "\n";
      if (r.meta.contains("lobes_per_side")) out << "lobes per side: " << r.meta["lobes_per_side"] << "\n";
      if (r.meta.contains("mirror"))
        out << "mirror check: " << (r.meta["mirror"]["passed"].get<bool>() ? "pass" : "FAIL") << " (correlation "
            << num(r.meta["mirror"]["correlation"].get<double>()) << ")\n";
      for (const auto& w : r.meta["warnings"]) err << "warning: " << w.get<std::string>() << "\n";
      return ok;
    }
    if (*design) {
      const std::string t = design_table(table, C, pitch, energies);
      if (design_out.empty()) {
        out << t;
      } else {
        AtomicWriter w;
        w.add(design_out, t);
        w.commit();
      }
      return ok;
    }
    if (*validate) {
      AcceptanceOptions opt;
      opt.only = only;
      opt.tamper = [&](int id, Check& c) {
        if (std::find(tamper.begin(), tamper.end(), id) != tamper.end()) c.hi = c.lo - 1.0;
      };
      int failed = 0;
      const std::vector<int> ids = only.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12} : only;
      for (int id : ids) {
        opt.only = {id};
        for (const auto& r : run_acceptance(opt)) {
          out << format_result(r) << "\n" << std::flush;
          if (!r.passed()) ++failed;
        }
      }
      out << failed << " criteria failed\n";
      return failed ? validation_failure : ok;
    }
    if (*compare) {
      const Grid a = parse_csv(read_file(grid_a)), b = parse_csv(read_file(grid_b));
      if (a.nx != b.nx || a.ny != b.ny) {
        err << "grids differ in shape: " << a.nx << "x" << a.ny << " vs " << b.nx << "x" << b.ny << "\n";
        return validation_failure;
      }
      std::vector<double> av(a.values.size());
      for (int row = 0; row < a.ny; ++row)
        for (int i = 0; i < a.nx; ++i) av[static_cast<size_t>(row) * a.nx + i] = a.at(mirror ? a.nx - 1 - i : i, row);
      double diff = 0.0;
      for (size_t i = 0; i < av.size(); ++i) diff = std::max(diff, std::abs(av[i] - b.values[i]));
      out << "correlation " << num(pearson(av, b.values)) << "\n" << "max_abs_diff " << num(diff) << "\n";
      return ok;
    }
  } catch (const ScenarioError& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return validation_failure;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return io_failure;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return io_failure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return io_failure;
  } catch (const std::exception& e) {
    err << "physics precondition failed: " << e.what() << "\n";
    return physics_failure;
  }
  return ok;
}

}  // namespace twist::cli
