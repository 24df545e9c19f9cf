#include "twist/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <utility>

#include "twist/analysis.hpp"
#include "twist/aperture.hpp"
#include "twist/beams.hpp"
#include "twist/constants.hpp"
#include "twist/design.hpp"
#include "twist/detector.hpp"
#include "twist/kirchhoff.hpp"
#include "twist/ssfm.hpp"

namespace twist {

using namespace units;
using constants::pi;
using cplx = std::complex<double>;

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const Check* CriterionResult::headline() const {
  for (const auto& c : checks)
    if (!c.passed()) return &c;
  return checks.empty() ? nullptr : &checks.back();
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

Check at_most(std::string label, double v, double hi) { return {std::move(label), v, -inf, hi}; }
Check at_least(std::string label, double v, double lo) { return {std::move(label), v, lo, inf}; }
Check within(std::string label, double v, double lo, double hi) { return {std::move(label), v, lo, hi}; }

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// k with prescribed projections (alpha, beta) on the triangle edges.
Vec2 k_from_projections(const TriangleAperture& t, double alpha, double beta) {
  const Vec2 a = t.e1(), b = t.e2();
  const double det = a.x * b.y - a.y * b.x;
  return {(alpha * b.y - beta * a.y) / det, (a.x * beta - b.x * alpha) / det};
}

std::vector<Check> c1_triangle_spectrum() {
  const auto tri = TriangleAperture::equilateral(1.0, 0.37, {0.11, -0.05});
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(-20.0, 20.0), tiny(-1e-6, 1e-6);
  double generic = 0.0, near[3] = {0, 0, 0};
  for (int n = 0; n < 700;) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - b) > 20.0) continue;
    const Vec2 k = k_from_projections(tri, a, b);
    generic = std::max(generic, rel_err(triangle_ft(tri, k), triangle_ft_bruteforce(tri, k, 64)));
    ++n;
  }
  for (int line = 0; line < 3; ++line)
    for (int n = 0; n < 100;) {
      const double s = u(rng), d = tiny(rng);
      const double a = line == 0 ? d : s, b = line == 1 ? d : (line == 2 ? s + d : s);
      if (std::abs(a) > 20.0 || std::abs(b) > 20.0 || std::abs(a - b) > 20.0) continue;
      const Vec2 k = k_from_projections(tri, a, b);
      near[line] = std::max(near[line], rel_err(triangle_ft(tri, k), triangle_ft_bruteforce(tri, k, 64)));
      ++n;
    }
  return {at_most("generic k, max rel err", generic, 1e-6), at_most("near k.e1 = 0", near[0], 1e-6),
          at_most("near k.e2 = 0", near[1], 1e-6), at_most("near k.e1 = k.e2", near[2], 1e-6)};
}

std::vector<Check> c2_dc_and_scaling() {
  const auto t1 = TriangleAperture::equilateral(1.0, 0.2);
  const double dc = std::abs(triangle_ft(t1, {0, 0}) - t1.area()) / t1.area();
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(-15.0, 15.0), ls(0.1, 10.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double L = ls(rng);
    const Vec2 k{u(rng) / L, u(rng) / L};
    const auto tL = TriangleAperture::equilateral(L, 0.2);
    worst = std::max(worst, rel_err(triangle_ft(tL, k), L * L * triangle_ft(t1, L * k)));
  }
  return {at_most("DC rel err", dc, 1e-12), at_most("scaling law max rel err", worst, 1e-10)};
}

std::vector<Check> c3_design_tables() {
  std::vector<Check> out;
  const auto e = ParticleSpecies::electron();
  const double e_delta[3] = {1.0, 2.5, 5.0}, e_L[3] = {86.60, 216.51, 433.01};
  const double e_z[3][3] = {{0.02, 0.09, 0.21}, {0.13, 0.54, 1.31}, {0.51, 2.15, 5.25}};
  const double energies[3] = {0.1 * MeV, 1 * MeV, 3 * MeV};
  const double p_delta[3] = {0.5, 1.0, 2.0}, p_L[3] = {43.30, 86.60, 173.21}, p_z[3] = {0.66, 2.62, 10.49};
  const double lam_p = make_kinematics(ParticleSpecies::proton(), 1 * MeV).de_broglie_wavelength;
  // rounded to the printed precision, compared in centimetres
  auto cm_off = [](double z, double table) { return std::abs(std::round(z / 0.01) - std::round(table / 0.01)); };
  double worst_L = 0.0, worst_z = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const auto o = optimize_geometry({e_delta[r] * um, 10.0, make_kinematics(e, energies[c]).de_broglie_wavelength});
      worst_L = std::max(worst_L, std::abs(o.L_opt / nm - e_L[r]));
      worst_z = std::max(worst_z, cm_off(o.z_opt, e_z[r][c]));
    }
    const auto o = optimize_geometry({p_delta[r] * um, 10.0, lam_p});
    worst_L = std::max(worst_L, std::abs(o.L_opt / nm - p_L[r]));
    worst_z = std::max(worst_z, cm_off(o.z_opt, p_z[r]));
  }
  out.push_back(at_most("max |L_opt - table| (nm)", worst_L, 0.01));
  out.push_back(at_most("max |z_opt - table| after rounding (cm)", worst_z, 1.0));
  return out;
}

std::vector<Check> c4_pitch() {
  const double lam = 1.0, L = 100.0, z = 1e6;
  const auto tri = TriangleAperture::equilateral(L);
  const Aperture ap = tri;
  const auto f = sample_aperture_field(BesselBeam{0, 0.0, 2 * pi / lam}, ap, aperture_grid(ap, L / 64, 256), 0.0, 4);
  const double D = detector_pitch(L, lam, z);
  const auto I = intensity(fraunhofer_fft(f, lam, z, ObservationPlane::square(z, 7 * D, 256)));
  const auto g = reciprocal_basis(tri);
  std::vector<Check> out;
  for (const auto& [name, dir] : {std::pair{"G1", g.g1}, std::pair{"G2", g.g2}}) {
    const double p = ridge_pitch(I, {0, 0}, dir, 6.5 * D);
    out.push_back(within(std::string("pitch along ") + name + " / Delta", p / D, 0.95, 1.05));
  }
  return out;
}

// Electrons at 100 keV, L = 400 nm, z = 0.2 m, kappa matched to the circumradius.
IntensityMap lobe_pattern(int ell) {
  const auto kin = make_kinematics(ParticleSpecies::electron(), 100 * keV);
  const double L = 400 * nm, z = 0.2, lam = kin.de_broglie_wavelength;
  const auto tri = TriangleAperture::equilateral(L);
  const Aperture ap = tri;
  const IncidentBeam b = make_bessel_kappa(ell, matched_kappa(ell, tri.circumradius()), kin);
  const auto f = sample_aperture_field(b, ap, aperture_grid(ap, L / 64, 256), 0.0, 4);
  const double D = detector_pitch(L, lam, z);
  return intensity(fraunhofer_fft(f, lam, z, ObservationPlane::square(z, (std::abs(ell) + 3) * D, 256)));
}

std::vector<Check> c5_lobes() {
  std::vector<Check> out;
  for (int ell = 1; ell <= 5; ++ell) {
    const auto ip = lobe_pattern(ell), im = lobe_pattern(-ell);
    const int lp = count_lobes(ip, 0.0).lobes_per_side, lm = count_lobes(im, 0.0).lobes_per_side;
    out.push_back(within("l=+" + std::to_string(ell) + " lobes per side", lp, ell + 1, ell + 1));
    out.push_back(within("l=-" + std::to_string(ell) + " lobes per side", lm, ell + 1, ell + 1));
    out.push_back(at_least("l=" + std::to_string(ell) + " mirror correlation", pearson(mirror_x(ip), im), 0.999));
  }
  return out;
}

std::vector<Check> c6_node_census() {
  const auto basis = reciprocal_basis(TriangleAperture::equilateral(1.0));
  double mismatches = 0.0;
  for (int ell = -20; ell <= 20; ++ell) {
    const auto nodes = highlighted_nodes(basis, ell);
    std::set<std::pair<int, int>> got, want;
    for (const auto& n : nodes) got.insert({n.m, n.n});
    const int a = std::abs(ell), s = ell < 0 ? -1 : 1;
    for (int m = -a; m <= a; ++m)
      for (int n = -a; n <= a; ++n)
        if (s * m >= 0 && s * n >= 0 && s * (m + n) <= a) want.insert({m, n});
    const auto expected = static_cast<size_t>((a + 1) * (a + 2) / 2);
    if (nodes.size() != expected || got != want || want.size() != expected) mismatches += 1;
  }
  return {at_most("values of l with a wrong node set (l = -20..20)", mismatches, 0.0)};
}

std::vector<Check> c7_circular() {
  // Fig. 2 geometry: 100 keV, kappa = 15 eV, a = 400 nm, z = 0.4 m
  const auto kin = make_kinematics(ParticleSpecies::electron(), 100 * keV);
  const double a = 400 * nm, z = 0.4;
  const IncidentBeam bp = make_bessel(2, 15 * eV, kin), bm = make_bessel(-2, 15 * eV, kin);
  const auto plane = ObservationPlane::square(z, 40 * um, 128);
  const auto ip = intensity(kirchhoff_circular(bp, a, plane));
  const auto im = intensity(kirchhoff_circular(bm, a, plane));
  double diff = 0.0;
  for (size_t i = 0; i < ip.values.size(); ++i) diff = std::max(diff, std::abs(ip.values[i] - im.values[i]));
  const auto axis = ObservationPlane::square(z, plane.x_max / 127, 3);
  const double on_axis = intensity(kirchhoff_circular(bp, a, axis)).at(1, 1);
  return {at_most("max |I(+2) - I(-2)| / max", diff / ip.max(), 1e-8),
          at_most("on-axis / peak", on_axis / ip.max(), 1e-6)};
}

std::vector<Check> c8_cross_method() {
  std::vector<Check> out;
  {
    const auto kin = make_kinematics(ParticleSpecies::electron(), 100 * keV);
    const double L = 400 * nm, lam = kin.de_broglie_wavelength;
    const double z = 20 * triangle_fraunhofer_distance(L, lam);
    const auto tri = TriangleAperture::equilateral(L);
    const Aperture ap = tri;
    const IncidentBeam b = make_bessel_kappa(3, matched_kappa(3, tri.circumradius()), kin);
    const auto plane = ObservationPlane::square(z, 6 * detector_pitch(L, lam, z), 64);
    const auto ik = intensity(kirchhoff_triangular(b, tri, plane));
    const auto af = sample_aperture_field(b, ap, aperture_grid(ap, L / 64, 256), 0.0, 4);
    out.push_back(at_least("Kirchhoff vs Fraunhofer, l=3, z = 20 z_F", pearson(ik, intensity(fraunhofer_fft(af, lam, z, plane))), 0.99));
  }
  {
    // scaled units: lambda = 1, grid step 1, side 16 steps, Fresnel number 1/20
    const double lam = 1.0, k = 2 * pi / lam, L = 16.0;
    const auto tri = TriangleAperture::equilateral(L);
    const Aperture ap = tri;
    const double kappa = matched_kappa(3, tri.circumradius());
    const BesselBeam b{3, kappa, std::sqrt(k * k - kappa * kappa)};
    ComplexField2D in(Grid2D::centered(2048, 1.0));
    for (int j = 0; j < in.ny(); ++j)
      for (int i = 0; i < in.nx(); ++i) in.at(i, j) = incident_amplitude(b, in.x(i), in.y(j));
    const double z = 20.0 * (L * L / 3.0) / lam;
    const auto out_ssfm = run_plan(in, {k, {MaskStep{tri, 0.0, 4}, FreeDrift{z}}});
    const auto plane = ObservationPlane::square(z, 6 * detector_pitch(L, lam, z), 64);
    const auto af = sample_aperture_field(b, ap, aperture_grid(ap, L / 64, 256), 0.0, 4);
    const auto iff = intensity(fraunhofer_fft(af, lam, z, plane));
    out.push_back(at_least("SSFM vs Fraunhofer, l=3, Fresnel number 1/20",
                           pearson(resample(intensity(out_ssfm), iff.grid), iff), 0.99));
  }
  return out;
}

std::vector<Check> c9_ssfm_physics() {
  const auto kin = make_kinematics(ParticleSpecies::electron(), 100 * keV);
  const double dx = 0.1 * nm, s0 = 6 * dx, k = kin.wavenumber();
  auto sampled = [&](const LGPacket& p) {
    ComplexField2D f(Grid2D::centered(512, dx));
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) f.at(i, j) = lg_field(p, std::hypot(f.x(i), f.y(j)), std::atan2(f.y(j), f.x(i)), 0.0);
    return f;
  };
  double width_err = 0.0;
  for (int n : {0, 1})
    for (int ell : {0, 1, 3}) {
      const LGPacket p(ell, n, s0, kin);
      const auto f = sampled(p);
      const double zr = p.rayleigh_length();
      for (double t : {1.0, 2.5, 5.0}) {
        const double w = rms_width(intensity(drift(f, t * zr, k))) / std::sqrt(double(p.quality()));
        width_err = std::max(width_err, std::abs(w / lg_width(p, t * zr) - 1.0));
      }
    }
  // norm over 1000 successive drifts up to 5 z_R
  const LGPacket p(3, 1, s0, kin);
  auto g = sampled(p);
  const double dz = 5 * p.rayleigh_length() / 1000;
  double step_err = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const double before = g.flux();
    g = drift(g, dz, k);
    step_err = std::max(step_err, std::abs(g.flux() / before - 1.0));
  }
  const double end_w = rms_width(intensity(g)) / std::sqrt(double(p.quality()));
  width_err = std::max(width_err, std::abs(end_w / lg_width(p, 1000 * dz) - 1.0));
  return {at_most("max per-step flux change over 1000 steps", step_err, 1e-12),
          at_most("max |width / sigma(z) - 1| up to 5 z_R", width_err, 5e-3)};
}

std::vector<Check> c10_count_rates() {
  const BeamBudget b20{1 * pC, 1 * Hz, 0.2, 1, 0.0}, b15{1 * pC, 1 * Hz, 0.15, 1, 0.0};
  const double r20 = total_rate(b20, 1e-4), r15 = total_rate(b15, 1e-4);
  return {within("R_tot at eta=0.2 (1/s)", r20, 124.3, 125.3), within("R_tot at eta=0.15 (1/s)", r15, 93.1, 94.1),
          within("t_1e5 at eta=0.2 (min)", time_to_counts(1e5, r20) / 60, 13.3, 17.9),
          within("t_1e5 at eta=0.15 (min)", time_to_counts(1e5, r15) / 60, 13.3, 17.9)};
}

std::vector<Check> c11_spreading() {
  std::vector<Check> out;
  for (double E : {0.1 * MeV, 5 * MeV}) {
    const LGPacket p(0, 0, 1 * nm, make_kinematics(ParticleSpecies::electron(), E));
    char label[64];
    std::snprintf(label, sizeof label, "z_R at %.1f MeV (um)", E / MeV);
    out.push_back(within(label, p.rayleigh_length() / um, 1.5, 30.0));
  }
  return out;
}

std::vector<Check> c12_scale_invariance() {
  std::vector<Check> out;
  const double s = 1e-7;
  {
    auto plan_out = [&](double f) {
      ComplexField2D in(Grid2D::centered(256, f));
      for (auto& v : in.values()) v = 1.0;
      return intensity(run_plan(in, {2 * pi / f, {MaskStep{TriangleAperture::equilateral(12.0 * f), 0.0, 4}, FreeDrift{400.0 * f}}}));
    };
    out.push_back(at_least("SSFM pattern under joint rescaling by 1e-7", pearson(plan_out(1.0).values, plan_out(s).values), 0.999));
  }
  {
    // Fig. 3 geometry (100 keV, kappa = 15 eV, L = 400 nm, z = 0.2 m, l = 2) against a copy
    // with every length multiplied by 1e7
    const auto kin = make_kinematics(ParticleSpecies::electron(), 100 * keV);
    const BesselBeam b = make_bessel(2, 15 * eV, kin);
    const double L = 400 * nm, z = 0.2, half = 6 * detector_pitch(L, kin.de_broglie_wavelength, z);
    const double f = 1.0 / s;
    const auto a = intensity(kirchhoff_triangular(b, TriangleAperture::equilateral(L), ObservationPlane::square(z, half, 64)));
    const auto c = intensity(kirchhoff_triangular(BesselBeam{b.ell, b.kappa / f, b.k_z / f},
                                                  TriangleAperture::equilateral(L * f),
                                                  ObservationPlane::square(z * f, half * f, 64)));
    out.push_back(at_least("Kirchhoff pattern under joint rescaling by 1e7", pearson(a.values, c.values), 0.999));
  }
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::vector<Check> (*run)();
};

const Criterion kCriteria[] = {
    {1, "triangle spectrum vs brute-force quadrature", c1_triangle_spectrum},
    {2, "DC value and scaling law", c2_dc_and_scaling},
    {3, "optimum tables (electrons, protons)", c3_design_tables},
    {4, "detector lattice pitch", c4_pitch},
    {5, "lobe rule and sign flip", c5_lobes},
    {6, "highlighted node census", c6_node_census},
    {7, "circular aperture symmetry", c7_circular},
    {8, "cross-method agreement", c8_cross_method},
    {9, "split-step drift physics", c9_ssfm_physics},
    {10, "count rates and exposure times", c10_count_rates},
    {11, "Rayleigh length band", c11_spreading},
    {12, "scale invariance", c12_scale_invariance},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  for (const auto& c : kCriteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
      continue;
    CriterionResult r{c.id, c.title, {}, 0.0, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.checks = c.run();
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.tamper)
      for (auto& ch : r.checks) options.tamper(c.id, ch);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char head[128];
  std::snprintf(head, sizeof head, "%s  C%-2d %-44s", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str());
  std::string line = head;
  if (!r.error.empty()) {
    line += "  error: " + r.error;
  } else if (const Check* c = r.headline()) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "  %s: %.6g in [%.6g, %.6g]", c->label.c_str(), c->measured, c->lo, c->hi);
    line += buf;
  }
  char t[32];
  std::snprintf(t, sizeof t, "  (%.1f s)", r.seconds);
  return line + t;
}

}  // namespace twist
