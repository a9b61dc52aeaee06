// theoryforge: structure flat TSTP theories into development graphs.

#include <CLI11.hpp>
#include <iostream>

#include "theoryforge/driver.hpp"

using namespace theoryforge;

int main(int argc, char** argv) {
  CLI::App app{"theoryforge: refactors flat first-order theories into development graphs"};
  app.require_subcommand(1);

  auto* structure = app.add_subcommand("structure", "structure one or more TSTP theory files");
  std::vector<std::string> paths;
  structure->add_option("paths", paths, "TSTP files")->required()->check(CLI::ExistingFile);
  double timeout = driver::default_timeout_seconds();
  structure->add_option("--timeout", timeout, "per-file budget in seconds");
  std::string tactic;
  structure->add_option("--tactic", tactic, "tactic expression instead of the automatic procedure");
  std::string export_dot, export_json, report_file;
  structure->add_option("--export-dot", export_dot, "directory for DOT exports");
  structure->add_option("--export-json", export_json, "directory for JSON graph exports");
  structure->add_option("--report", report_file, "write the report as CSV to this file");

  auto* check = app.add_subcommand("check", "validate a TSTP file or a JSON graph document");
  std::string check_path;
  check->add_option("path", check_path, "file to validate")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  if (structure->parsed()) {
    driver::StructureOptions opts;
    opts.timeout_seconds = timeout;
    if (!tactic.empty()) opts.tactic = tactic;
    if (!export_dot.empty()) opts.export_dot = export_dot;
    if (!export_json.empty()) opts.export_json = export_json;

    std::vector<report::Report> rows;
    bool all_ok = true;
    for (const auto& p : paths) {
      auto outcome = driver::structure_file(p, opts);
      for (const auto& w : outcome.warnings) std::cerr << p << ": warning: " << w << "\n";
      rows.push_back(outcome.row);
      all_ok = all_ok && outcome.ok;
    }
    std::cout << report::render_table(rows);
    if (!report_file.empty()) driver::write_file(report_file, report::render_csv(rows));
    return all_ok ? 0 : 1;
  }

  bool clean = false;
  std::cout << driver::check_file(check_path, &clean);
  return clean ? 0 : 1;
}
