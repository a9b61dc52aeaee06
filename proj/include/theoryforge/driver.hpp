#ifndef THEORYFORGE_DRIVER_HPP
#define THEORYFORGE_DRIVER_HPP

// Per-file pipeline behind the CLI: parse, build the initial structuring, run
// the automatic procedure or a user tactic, export, report.

#include <optional>
#include <string>
#include <vector>

#include "theoryforge/report.hpp"
#include "theoryforge/tactics.hpp"

namespace theoryforge::driver {

struct StructureOptions {
  double timeout_seconds = 300.0;
  std::optional<std::string> tactic;       // defaults to the automatic procedure
  std::optional<std::string> export_dot;   // directory
  std::optional<std::string> export_json;  // directory
};

struct FileOutcome {
  report::Report row;
  bool ok = false;  // parsed and processed (a timeout still counts as ok)
  std::optional<dg::Structuring> result;
  std::vector<std::string> warnings;
};

// Reads the default budget from THEORYFORGE_TIMEOUT when set.
double default_timeout_seconds();

FileOutcome structure_file(const std::string& path, const StructureOptions& opts);

// Validation entry point: TSTP files get parse + initial structuring checks,
// .json documents get import + validate + check_structuring. Returns the
// diagnostics rendered for the user; empty means clean.
std::string check_file(const std::string& path, bool* clean);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string base_name(const std::string& path);

}  // namespace theoryforge::driver

#endif
