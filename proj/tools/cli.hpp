#pragma once

#include <iosfwd>

#include "json.hpp"
#include "output.hpp"
#include "scenario.hpp"

namespace twist::cli {

enum ExitCode { ok = 0, validation_failure = 1, physics_failure = 2, io_failure = 3 };

struct RunResult {
  Grid grid;  // intensity density or counts, row 0 at the largest y
  nlohmann::json meta;
};

/// Computes a scenario without touching the filesystem.
RunResult execute(const Scenario& s);

/// Files written by `run`: <dir>/<name>.csv, .pgm and .meta.json.
void write_bundle(const Scenario& s, const RunResult& r, const std::string& dir);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twist::cli
