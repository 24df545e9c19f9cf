#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>
#include <vector>

#include "twist/constants.hpp"

namespace twist::cli {

using nlohmann::json;

namespace {

struct Unit {
  const char* name;
  double scale;
};

const std::vector<Unit>& units_for(Dimension dim) {
  static const std::vector<Unit> length{{"m", 1.0},    {"cm", 1e-2},  {"mm", 1e-3}, {"um", 1e-6},
                                        {"μm", 1e-6},  {"nm", 1e-9},  {"pm", 1e-12}, {"fm", 1e-15}};
  static const std::vector<Unit> energy{{"eV", 1.0}, {"keV", 1e3}, {"MeV", 1e6}, {"GeV", 1e9}};
  static const std::vector<Unit> charge{{"C", 1.0}, {"nC", 1e-9}, {"pC", 1e-12}, {"fC", 1e-15}};
  static const std::vector<Unit> frequency{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}};
  static const std::vector<Unit> time{{"s", 1.0}, {"ms", 1e-3}, {"min", 60.0}, {"h", 3600.0}};
  static const std::vector<Unit> angle{{"rad", 1.0}, {"deg", constants::pi / 180.0}};
  switch (dim) {
    case Dimension::length: return length;
    case Dimension::energy: return energy;
    case Dimension::charge: return charge;
    case Dimension::frequency: return frequency;
    case Dimension::time: return time;
    case Dimension::angle: return angle;
  }
  return length;
}

const char* base_unit(Dimension dim) { return units_for(dim).front().name; }

// Walks a JSON object, recording which keys were consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ScenarioError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& get(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ScenarioError(at(key), "required field is missing");
    return j_.at(key);
  }

  std::string str(const std::string& key, std::optional<std::string> def = {}) {
    if (!has(key) && def) return *def;
    const json& v = get(key);
    if (!v.is_string()) throw ScenarioError(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::string one_of(const std::string& key, std::initializer_list<const char*> allowed,
                     std::optional<std::string> def = {}) {
    const std::string v = str(key, std::move(def));
    for (const char* a : allowed)
      if (v == a) return v;
    std::string list;
    for (const char* a : allowed) list += list.empty() ? a : std::string(", ") + a;
    throw ScenarioError(at(key), "\"" + v + "\" is not one of " + list);
  }

  long long integer(const std::string& key, long long lo, long long hi, std::optional<long long> def = {}) {
    if (!has(key) && def) return *def;
    const json& v = get(key);
    if (!v.is_number_integer()) throw ScenarioError(at(key), "expected an integer");
    const long long x = v.get<long long>();
    if (x < lo || x > hi)
      throw ScenarioError(at(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }

  double number(const std::string& key, double lo, double hi, std::optional<double> def = {}) {
    if (!has(key) && def) return *def;
    const json& v = get(key);
    if (!v.is_number()) throw ScenarioError(at(key), "expected a number");
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) throw ScenarioError(at(key), "out of range");
    return x;
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) return def;
    const json& v = get(key);
    if (!v.is_boolean()) throw ScenarioError(at(key), "expected true or false");
    return v.get<bool>();
  }

  double quantity(const std::string& key, Dimension dim, std::optional<double> def = {}) {
    if (!has(key) && def) return *def;
    const json& v = get(key);
    try {
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) return parse_quantity(v.get<std::string>(), dim);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(at(key), e.what());
    }
    throw ScenarioError(at(key), std::string("expected a quantity such as \"1 ") + units_for(dim)[1].name + "\"");
  }

  double positive(const std::string& key, Dimension dim, std::optional<double> def = {}) {
    const double v = quantity(key, dim, def);
    if (!(v > 0.0) || !std::isfinite(v)) throw ScenarioError(at(key), "must be positive");
    return v;
  }

  Reader child(const std::string& key) { return Reader(get(key), at(key)); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ScenarioError(at(it.key()), "unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

double parse_quantity(const std::string& text, Dimension dim) {
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) throw std::invalid_argument("cannot read a number from \"" + text + "\"");
  std::string unit(ptr, last);
  while (!unit.empty() && unit.front() == ' ') unit.erase(unit.begin());
  while (!unit.empty() && unit.back() == ' ') unit.pop_back();
  if (unit.empty()) return value;
  for (const auto& u : units_for(dim))
    if (unit == u.name) return value * u.scale;
  throw std::invalid_argument("unknown unit \"" + unit + "\"");
}

std::string format_quantity(double value, Dimension dim) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, r.ptr) + " " + base_unit(dim);
}

Scenario parse_scenario(const json& j) {
  Scenario s;
  Reader root(j, "");
  s.name = root.str("name");
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos || s.name[0] == '.')
    throw ScenarioError("name", "must be a plain file stem");

  {
    Reader b = root.child("beam");
    s.beam.family = b.one_of("family", {"bessel", "lg"});
    s.beam.species = b.one_of("species", {"electron", "proton", "carbon12"}, "electron");
    s.beam.energy = b.positive("energy", Dimension::energy);
    s.beam.ell = static_cast<int>(b.integer("ell", -50, 50));
    if (s.beam.family == "lg") {
      s.beam.n = static_cast<int>(b.integer("n", 0, 50, 0));
      s.beam.sigma0 = b.positive("sigma0", Dimension::length);
    } else {
      if (b.has("kappa") && b.get("kappa").is_string() && b.get("kappa").get<std::string>() == "matched")
        s.beam.kappa_matched = true;
      else
        s.beam.kappa = b.quantity("kappa", Dimension::energy);
      if (s.beam.kappa < 0.0) throw ScenarioError("beam.kappa", "must be non-negative");
    }
    b.finish();
  }
  {
    Reader a = root.child("aperture");
    s.aperture.shape = a.one_of("shape", {"triangle", "circle"});
    s.aperture.size = a.positive("size", Dimension::length);
    s.aperture.orientation = a.quantity("orientation", Dimension::angle, 0.0);
    if (a.has("center")) {
      const json& c = a.get("center");
      if (!c.is_array() || c.size() != 2) throw ScenarioError(a.at("center"), "expected [x, y]");
      double xy[2];
      for (int i = 0; i < 2; ++i) {
        const std::string p = a.at("center") + "[" + std::to_string(i) + "]";
        try {
          if (c[i].is_number())
            xy[i] = c[i].get<double>();
          else if (c[i].is_string())
            xy[i] = parse_quantity(c[i].get<std::string>(), Dimension::length);
          else
            throw ScenarioError(p, "expected a length");
        } catch (const std::invalid_argument& e) {
          throw ScenarioError(p, e.what());
        }
      }
      s.aperture.center = {xy[0], xy[1]};
    }
    a.finish();
  }
  {
    Reader g = root.child("geometry");
    s.z = g.positive("z", Dimension::length);
    s.d_sa = g.quantity("d_sa", Dimension::length, 0.0);
    if (s.d_sa < 0.0) throw ScenarioError("geometry.d_sa", "must be non-negative");
    g.finish();
  }
  s.method = root.one_of("method", {"kirchhoff", "fraunhofer", "ssfm", "all"}, "kirchhoff");
  if (root.has("plane")) {
    Reader p = root.child("plane");
    s.plane.half_width = p.quantity("half_width", Dimension::length, 0.0);
    if (s.plane.half_width < 0.0) throw ScenarioError("plane.half_width", "must be non-negative");
    s.plane.n = static_cast<int>(p.integer("n", 2, 4096, 128));
    p.finish();
  }
  if (root.has("numerics")) {
    Reader n = root.child("numerics");
    s.numerics.samples_across = static_cast<int>(n.integer("samples_across", 8, 1024, 64));
    s.numerics.fft_grid = static_cast<int>(n.integer("fft_grid", 16, 4096, 256));
    s.numerics.pad = static_cast<int>(n.integer("pad", 1, 32, 8));
    s.numerics.ssfm_grid = static_cast<int>(n.integer("ssfm_grid", 16, 8192, 2048));
    s.numerics.ssfm_per_side = static_cast<int>(n.integer("ssfm_per_side", 4, 1024, 16));
    s.numerics.supersample = static_cast<int>(n.integer("supersample", 1, 16, 4));
    n.finish();
  }
  if (root.has("budget")) {
    Reader b = root.child("budget");
    BudgetSpec bs;
    bs.budget.Q = b.positive("Q", Dimension::charge);
    bs.budget.f_rep = b.positive("f_rep", Dimension::frequency);
    bs.budget.eta = b.number("eta", 0.0, 1.0);
    bs.budget.Z = static_cast<int>(b.integer("Z", 1, 100, 1));
    bs.budget.exposure = b.quantity("exposure", Dimension::time);
    if (bs.budget.exposure < 0.0) throw ScenarioError("budget.exposure", "must be non-negative");
    bs.pixel = b.positive("pixel", Dimension::length);
    if (b.has("seed")) bs.seed = static_cast<std::uint64_t>(b.integer("seed", 0, (1LL << 53)));
    b.finish();
    s.budget = bs;
  }
  if (root.has("output")) {
    Reader o = root.child("output");
    s.output.tone = o.one_of("tone", {"log", "linear"}, "log");
    s.output.bits = static_cast<int>(o.integer("bits", 8, 16, 8));
    if (s.output.bits != 8 && s.output.bits != 16) throw ScenarioError("output.bits", "must be 8 or 16");
    s.output.clip_db = o.number("clip_db", -200.0, -0.1, -20.0);
    o.finish();
  }
  s.mirror_check = root.boolean("mirror_check", false);
  root.finish();

  if (s.beam.family == "lg" && s.d_sa <= 0.0)
    throw ScenarioError("geometry.d_sa", "an LG packet needs a positive source-aperture distance");
  if (s.beam.family == "bessel" && s.d_sa != 0.0)
    throw ScenarioError("geometry.d_sa", "only meaningful for LG packets");
  return s;
}

Scenario load_scenario(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::ios_base::failure("cannot open " + file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("<root>", std::string("not valid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  json b{{"family", s.beam.family},
         {"species", s.beam.species},
         {"energy", format_quantity(s.beam.energy, Dimension::energy)},
         {"ell", s.beam.ell}};
  if (s.beam.family == "lg") {
    b["n"] = s.beam.n;
    b["sigma0"] = format_quantity(s.beam.sigma0, Dimension::length);
  } else {
    b["kappa"] = s.beam.kappa_matched ? std::string("matched") : format_quantity(s.beam.kappa, Dimension::energy);
  }
  j["beam"] = b;
  j["aperture"] = {{"shape", s.aperture.shape},
                   {"size", format_quantity(s.aperture.size, Dimension::length)},
                   {"orientation", format_quantity(s.aperture.orientation, Dimension::angle)},
                   {"center",
                    {format_quantity(s.aperture.center.x, Dimension::length),
                     format_quantity(s.aperture.center.y, Dimension::length)}}};
  json g{{"z", format_quantity(s.z, Dimension::length)}};
  if (s.beam.family == "lg") g["d_sa"] = format_quantity(s.d_sa, Dimension::length);
  j["geometry"] = g;
  j["method"] = s.method;
  j["plane"] = {{"half_width", format_quantity(s.plane.half_width, Dimension::length)}, {"n", s.plane.n}};
  j["numerics"] = {{"samples_across", s.numerics.samples_across}, {"fft_grid", s.numerics.fft_grid},
                   {"pad", s.numerics.pad},
                   {"ssfm_grid", s.numerics.ssfm_grid},
                   {"ssfm_per_side", s.numerics.ssfm_per_side},
                   {"supersample", s.numerics.supersample}};
  if (s.budget) {
    json bj{{"Q", format_quantity(s.budget->budget.Q, Dimension::charge)},
            {"f_rep", format_quantity(s.budget->budget.f_rep, Dimension::frequency)},
            {"eta", s.budget->budget.eta},
            {"Z", s.budget->budget.Z},
            {"exposure", format_quantity(s.budget->budget.exposure, Dimension::time)},
            {"pixel", format_quantity(s.budget->pixel, Dimension::length)}};
    if (s.budget->seed) bj["seed"] = *s.budget->seed;
    j["budget"] = bj;
  }
  j["output"] = {{"tone", s.output.tone}, {"bits", s.output.bits}, {"clip_db", s.output.clip_db}};
  j["mirror_check"] = s.mirror_check;
  return j;
}

ParticleSpecies species_of(const Scenario& s) { return ParticleSpecies::from_name(s.beam.species); }

Kinematics kinematics_of(const Scenario& s) { return make_kinematics(species_of(s), s.beam.energy); }

Aperture aperture_of(const Scenario& s) {
  if (s.aperture.shape == "circle") return CircleAperture(s.aperture.size, s.aperture.center);
  return TriangleAperture::equilateral(s.aperture.size, s.aperture.orientation, s.aperture.center);
}

IncidentBeam beam_of(const Scenario& s, int ell) {
  const Kinematics kin = kinematics_of(s);
  if (s.beam.family == "lg") return LGIncidence{LGPacket(ell, s.beam.n, s.beam.sigma0, kin), s.d_sa};
  if (s.beam.kappa_matched) return make_bessel_kappa(ell, matched_kappa(ell, aperture_extent(aperture_of(s))), kin);
  return make_bessel(ell, s.beam.kappa, kin);
}

}  // namespace twist::cli
