#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "twist/constants.hpp"

using namespace twist;
using namespace twist::cli;
using namespace twist::units;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "twistdiff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("twist_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

json lobe_scenario(int ell) {
  return {{"name", "lobe"},
          {"beam", {{"family", "bessel"}, {"species", "electron"}, {"energy", "100 keV"}, {"ell", ell},
                    {"kappa", "matched"}}},
          {"aperture", {{"shape", "triangle"}, {"size", "400 nm"}}},
          {"geometry", {{"z", "0.2 m"}}},
          {"method", "fraunhofer"},
          {"plane", {{"n", 128}}},
          {"mirror_check", true}};
}

int files_in(const fs::path& dir) {
  int n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++n;
  return n;
}

std::string error_path(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ScenarioError& e) {
    return e.path();
  }
  return "(accepted)";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("quantities with units") {
    CHECK(parse_quantity("400 nm", Dimension::length) == doctest::Approx(400e-9));
    CHECK(parse_quantity("0.5um", Dimension::length) == doctest::Approx(0.5e-6));
    CHECK(parse_quantity("15 eV", Dimension::energy) == 15.0);
    CHECK(parse_quantity("1 MeV", Dimension::energy) == 1e6);
    CHECK(parse_quantity("1 pC", Dimension::charge) == doctest::Approx(1e-12));
    CHECK(parse_quantity("2 min", Dimension::time) == 120.0);
    CHECK(parse_quantity("0.25", Dimension::length) == 0.25);
    CHECK(parse_quantity("90 deg", Dimension::angle) == doctest::Approx(std::numbers::pi / 2));
    CHECK_THROWS_AS(parse_quantity("400 furlongs", Dimension::length), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("nm", Dimension::length), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("1 MeV", Dimension::length), std::invalid_argument);
    for (double v : {1.0, 3.7e-12, 0.1 + 0.2, 6.02e23})
      CHECK(parse_quantity(format_quantity(v, Dimension::length), Dimension::length) == v);
  }

  TEST_CASE("scenario normal form round-trips") {
    json j = lobe_scenario(-4);
    j["budget"] = {{"Q", "1 pC"}, {"f_rep", "1 kHz"}, {"eta", 0.2}, {"exposure", "800 s"}, {"pixel", "0.1 um"},
                   {"seed", 11}};
    j["aperture"]["orientation"] = "10 deg";
    j["output"] = {{"tone", "linear"}, {"bits", 16}};
    const Scenario s = parse_scenario(j);
    CHECK(s.beam.ell == -4);
    CHECK(s.beam.kappa_matched);
    CHECK(s.budget->budget.f_rep == 1000.0);
    CHECK(s.budget->seed == 11u);
    const json n = to_json(s);
    CHECK(to_json(parse_scenario(n)).dump() == n.dump());
  }

  TEST_CASE("invalid scenarios name the offending field") {
    json j = lobe_scenario(1);
    j["beam"]["colour"] = "blue";
    CHECK(error_path(j) == "beam.colour");

    j = lobe_scenario(1);
    j["aperture"].erase("size");
    CHECK(error_path(j) == "aperture.size");

    j = lobe_scenario(1);
    j["geometry"]["z"] = "0.2 furlongs";
    CHECK(error_path(j) == "geometry.z");

    j = lobe_scenario(1);
    j["beam"]["ell"] = 51;
    CHECK(error_path(j) == "beam.ell");

    j = lobe_scenario(1);
    j["method"] = "magic";
    CHECK(error_path(j) == "method");

    j = lobe_scenario(1);
    j["geometry"]["d_sa"] = "0.1 m";
    CHECK(error_path(j) == "geometry.d_sa");

    j = lobe_scenario(1);
    j["beam"] = {{"family", "lg"}, {"species", "electron"}, {"energy", "100 keV"}, {"ell", 1}, {"sigma0", "10 nm"}};
    CHECK(error_path(j) == "geometry.d_sa");

    j = lobe_scenario(1);
    j["output"] = {{"bits", 12}};
    CHECK(error_path(j) == "output.bits");

    j = lobe_scenario(1);
    j["budget"] = {{"Q", "1 pC"}, {"f_rep", "1 Hz"}, {"eta", 1.5}, {"exposure", "1 s"}, {"pixel", "1 um"}};
    CHECK(error_path(j) == "budget.eta");
  }

  TEST_CASE("exit codes") {
    TempDir tmp("codes");

    SUBCASE("malformed scenario exits 1 and writes nothing") {
      write_text(tmp.file("bad.json"), "{\"name\": \"x\", \"beam\": ");
      const auto o = invoke({"run", tmp.file("bad.json"), "-o", tmp.file("out")});
      CHECK(o.code == validation_failure);
      CHECK(!fs::exists(tmp.file("out")));
      json j = lobe_scenario(1);
      j["beam"]["spin"] = 1;
      write_text(tmp.file("unknown.json"), j.dump());
      const auto u = invoke({"run", tmp.file("unknown.json"), "-o", tmp.file("out")});
      CHECK(u.code == validation_failure);
      CHECK(u.err.find("beam.spin") != std::string::npos);
      CHECK(!fs::exists(tmp.file("out")));
    }
    SUBCASE("unknown subcommand or option exits 1") {
      CHECK(invoke({"frobnicate"}).code == validation_failure);
      CHECK(invoke({"design", "--table", "muons"}).code == validation_failure);
      CHECK(invoke({"--help"}).code == ok);
    }
    SUBCASE("violated physics precondition exits 2") {
      json j = lobe_scenario(1);
      j["beam"] = {{"family", "lg"}, {"species", "electron"}, {"energy", "100 keV"}, {"ell", 1}, {"sigma0", "1 fm"}};
      j["geometry"]["d_sa"] = "0.1 m";
      write_text(tmp.file("p.json"), j.dump());
      const auto o = invoke({"run", tmp.file("p.json"), "-o", tmp.file("out")});
      CHECK(o.code == physics_failure);
      CHECK(!fs::exists(tmp.file("out/lobe.csv")));
    }
    SUBCASE("missing input or unwritable output exits 3") {
      CHECK(invoke({"run", tmp.file("absent.json")}).code == io_failure);
      CHECK(invoke({"compare", tmp.file("a.csv"), tmp.file("b.csv")}).code == io_failure);
      write_text(tmp.file("s.json"), lobe_scenario(1).dump());
      write_text(tmp.file("blocker"), "");
      const auto o = invoke({"run", tmp.file("s.json"), "-o", tmp.file("blocker/sub")});
      CHECK(o.code == io_failure);
    }
  }

  TEST_CASE("matched lobe scenario: lobe count, mirror, bundle") {
    TempDir tmp("run");
    write_text(tmp.file("s.json"), lobe_scenario(3).dump());
    const auto o = invoke({"run", tmp.file("s.json"), "-o", tmp.file("out")});
    REQUIRE(o.code == ok);
    CHECK(o.out.find("lobes per side: 4") != std::string::npos);
    CHECK(o.out.find("mirror check: pass") != std::string::npos);
    CHECK(files_in(tmp.file("out")) == 3);

    const json meta = json::parse(read_file(tmp.file("out/lobe.meta.json")));
    CHECK(meta["lobes_per_side"] == 4);
    CHECK(meta["mirror"]["correlation"].get<double>() >= 0.999);
    CHECK(meta["checksums"]["csv"] == hex64(fnv1a(read_file(tmp.file("out/lobe.csv")))));
    CHECK(meta["checksums"]["pgm"] == hex64(fnv1a(read_file(tmp.file("out/lobe.pgm")))));
    CHECK(meta["derived"]["far_field"] == true);

    const Grid g = parse_csv(read_file(tmp.file("out/lobe.csv")));
    CHECK(g.nx == 128);
    CHECK(g.ny == 128);

    // rerun is byte-identical
    const std::string first = read_file(tmp.file("out/lobe.csv"));
    REQUIRE(invoke({"run", tmp.file("s.json"), "-o", tmp.file("again")}).code == ok);
    CHECK(read_file(tmp.file("again/lobe.csv")) == first);

    // the mirrored ell reproduces the reflected pattern
    json m = lobe_scenario(-3);
    m["name"] = "lobe_m";
    write_text(tmp.file("m.json"), m.dump());
    REQUIRE(invoke({"run", tmp.file("m.json"), "-o", tmp.file("out")}).code == ok);
    const auto c = invoke({"compare", tmp.file("out/lobe.csv"), tmp.file("out/lobe_m.csv"), "--mirror"});
    REQUIRE(c.code == ok);
    double corr = 0.0;
    std::istringstream(c.out.substr(c.out.find(' ') + 1)) >> corr;
    CHECK(corr >= 0.999);
  }

  TEST_CASE("seeded Poisson counts are reproducible") {
    json j = lobe_scenario(2);
    j["plane"]["n"] = 64;
    j["budget"] = {{"Q", "1 pC"}, {"f_rep", "1 Hz"}, {"eta", 0.2}, {"exposure", "10 s"}, {"pixel", "1 um"},
                   {"seed", 5}};
    const Scenario s = parse_scenario(j);
    const RunResult a = execute(s);
    const RunResult b = execute(s);
    CHECK(to_csv(a.grid) == to_csv(b.grid));
    double total = 0.0;
    for (double v : a.grid.values) {
      CHECK(v == std::floor(v));
      total += v;
    }
    CHECK(total > 0.0);
    CHECK(a.meta["detector"]["seed"] == 5);

    j["budget"]["seed"] = 6;
    CHECK(to_csv(execute(parse_scenario(j)).grid) != to_csv(a.grid));
  }

  TEST_CASE("PGM encoding") {
    const Grid g{3, 2, {0.0, 0.01, 0.1, 1.0, 0.5, 0.001}};
    const std::string p8 = to_pgm(g, 8, Tone::linear);
    const std::string head8 = "P5\n3 2\n255\n";
    REQUIRE(p8.size() == head8.size() + 6);
    CHECK(p8.substr(0, head8.size()) == head8);
    const auto px = [&](const std::string& s, size_t i) { return static_cast<unsigned char>(s[head8.size() + i]); };
    CHECK(px(p8, 0) == 0);
    CHECK(px(p8, 3) == 255);
    CHECK(px(p8, 4) == 128);

    const std::string p16 = to_pgm(g, 16, Tone::linear);
    const std::string head16 = "P5\n3 2\n65535\n";
    REQUIRE(p16.size() == head16.size() + 12);
    CHECK(p16.substr(0, head16.size()) == head16);
    const auto hi = static_cast<unsigned char>(p16[head16.size() + 6]);
    const auto lo = static_cast<unsigned char>(p16[head16.size() + 7]);
    CHECK(hi == 0xff);
    CHECK(lo == 0xff);

    // -20 dB clip: 0.01 and below are black, 0.1 sits half way
    const std::string lg = to_pgm(g, 8, Tone::log, -20.0);
    const auto q = [&](size_t i) { return static_cast<unsigned char>(lg[head8.size() + i]); };
    CHECK(q(1) == 0);
    CHECK(q(5) == 0);
    CHECK(q(2) == 128);
    CHECK(q(3) == 255);
  }

  TEST_CASE("CSV round-trip and validation") {
    const Grid g{3, 2, {1.0, 2.5e-300, 0.1 + 0.2, -0.0, 6.02e23, 1.0 / 3.0}};
    const Grid r = parse_csv(to_csv(g));
    CHECK(r.nx == 3);
    CHECK(r.ny == 2);
    CHECK(r.values == g.values);
    CHECK_THROWS_AS(parse_csv("1,2\n3\n"), IoError);
    CHECK_THROWS_AS(parse_csv("1,x\n"), IoError);
  }

  TEST_CASE("atomic writer publishes all files or none") {
    TempDir tmp("atomic");
    AtomicWriter w;
    w.add(tmp.file("a.txt"), "a");
    w.add(tmp.file("missing/b.txt"), "b");
    CHECK_THROWS_AS(w.commit(), IoError);
    CHECK(files_in(tmp.path) == 0);
  }

  TEST_CASE("design tables") {
    const auto o = invoke({"design", "--table", "electrons", "--pitch", "1,2.5,5"});
    REQUIRE(o.code == ok);
    CHECK(o.out ==
          "Delta_um,L_opt_nm,z_opt_m@0.1MeV,z_opt_m@1MeV,z_opt_m@3MeV\n"
          "1.00,86.60,0.02,0.09,0.21\n"
          "2.50,216.51,0.13,0.54,1.31\n"
          "5.00,433.01,0.51,2.15,5.25\n");
    const auto p = invoke({"design", "--table", "protons", "--pitch", "0.5,1,2"});
    REQUIRE(p.code == ok);
    CHECK(p.out == "Delta_um,L_opt_nm,z_opt_m@1MeV\n0.50,43.30,0.66\n1.00,86.60,2.62\n2.00,173.21,10.48\n");

    const auto empty = invoke({"design", "--table", "electrons"});
    CHECK(empty.code == ok);
    CHECK(empty.out == "Delta_um,L_opt_nm,z_opt_m@0.1MeV,z_opt_m@1MeV,z_opt_m@3MeV\n");

    const auto geo = invoke({"design", "--table", "geometries"});
    REQUIRE(geo.code == ok);
    CHECK(std::count(geo.out.begin(), geo.out.end(), '\n') == 7);
  }

  TEST_CASE("validate surfaces tampered measurements") {
    const auto good = invoke({"validate", "--only", "10"});
    CHECK(good.code == ok);
    CHECK(good.out.find("PASS  C10") != std::string::npos);
    CHECK(good.out.find("0 criteria failed") != std::string::npos);

    const auto bad = invoke({"validate", "--only", "10", "--tamper", "10"});
    CHECK(bad.code == validation_failure);
    CHECK(bad.out.find("FAIL  C10") != std::string::npos);
    CHECK(bad.out.find("1 criteria failed") != std::string::npos);
  }

  TEST_CASE("compare rejects mismatched shapes") {
    TempDir tmp("cmp");
    write_text(tmp.file("a.csv"), "1,2\n3,4\n");
    write_text(tmp.file("b.csv"), "1,2,3\n");
    CHECK(invoke({"compare", tmp.file("a.csv"), tmp.file("b.csv")}).code == validation_failure);
    write_text(tmp.file("c.csv"), "2,1\n4,3\n");
    const auto o = invoke({"compare", tmp.file("a.csv"), tmp.file("c.csv"), "--mirror"});
    CHECK(o.code == ok);
    CHECK(o.out == "correlation 1\nmax_abs_diff 0\n");
  }

  TEST_CASE("shipped scenarios parse and round-trip") {
    int n = 0;
    for (const auto& e : fs::directory_iterator(TWIST_SCENARIO_DIR)) {
      if (e.path().extension() != ".json") continue;
      CAPTURE(e.path().string());
      const Scenario s = load_scenario(e.path().string());
      CHECK(s.name == e.path().stem().string());
      CHECK(to_json(parse_scenario(to_json(s))).dump() == to_json(s).dump());
      CHECK_NOTHROW(beam_of(s, s.beam.ell));
      ++n;
    }
    CHECK(n >= 50);
  }
}
