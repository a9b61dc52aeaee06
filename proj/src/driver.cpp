#include "theoryforge/driver.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "theoryforge/dot.hpp"
#include "theoryforge/graph_json.hpp"
#include "theoryforge/tstp.hpp"

namespace theoryforge::driver {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string base_name(const std::string& path) { return fs::path(path).filename().string(); }

double default_timeout_seconds() {
  if (const char* env = std::getenv("THEORYFORGE_TIMEOUT")) {
    try {
      double v = std::stod(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 300.0;
}

FileOutcome structure_file(const std::string& path, const StructureOptions& opts) {
  FileOutcome out;
  out.row.article = base_name(path);
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string text = read_file(path);
    auto records = tstp::parse_tstp(text, &out.warnings);
    dg::Structuring initial = tstp::initial_structuring(records);

    tactics::Budget budget;
    budget.wall_seconds = opts.timeout_seconds;

    dg::Structuring final_s;
    bool timed_out = false;
    if (opts.tactic) {
      auto t = tactics::parse_tactic(*opts.tactic);
      auto run = tactics::run_tactic(t, initial, budget);
      final_s = std::move(run.result);
      timed_out = run.outcome == tactics::Outcome::TimedOut;
    } else {
      auto [res, rep] = tactics::auto_structure(initial, budget);
      final_s = std::move(res);
      timed_out = rep.timed_out;
    }

    auto [ax0, th0] = dg::count_local_sentences(initial.graph);
    auto [ax1, th1] = dg::count_local_sentences(final_s.graph);
    if (ax1 > ax0) throw std::logic_error("axiom count increased during structuring");
    out.row.axioms_initial = ax0;
    out.row.theorems_initial = th0;
    out.row.axioms_final = ax1;
    out.row.theorems_final = th1;
    out.row.reduction_percent = report::reduction_metric(ax0, th0, ax1, th1);
    out.row.timed_out = timed_out;

    std::string stem = fs::path(path).stem().string();
    if (opts.export_dot) {
      fs::create_directories(*opts.export_dot);
      write_file((fs::path(*opts.export_dot) / (stem + ".dot")).string(), dot::export_dot(final_s));
    }
    if (opts.export_json) {
      fs::create_directories(*opts.export_json);
      write_file((fs::path(*opts.export_json) / (stem + ".json")).string(),
                 graph_json::export_document(final_s));
    }
    out.result = std::move(final_s);
    out.ok = true;
  } catch (const std::exception& e) {
    out.row.status = std::string("error: ") + e.what();
    out.ok = false;
  }
  out.row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string check_file(const std::string& path, bool* clean) {
  std::ostringstream os;
  bool ok = true;
  try {
    std::string text = read_file(path);
    if (fs::path(path).extension() == ".json") {
      dg::Structuring s = graph_json::import_document(text);
      dg::Diagnostics d1 = dg::validate_graph(s.graph);
      dg::Diagnostics d2 = dg::check_structuring(s);
      if (d1.empty() && d2.empty()) {
        os << path << ": ok (" << s.graph.nodes.size() << " nodes, " << s.graph.links.size()
           << " links)\n";
      } else {
        ok = false;
        os << dg::render(d1) << dg::render(d2);
      }
    } else {
      std::vector<std::string> warnings;
      auto records = tstp::parse_tstp(text, &warnings);
      for (const auto& w : warnings) os << path << ": warning: " << w << "\n";
      dg::Structuring s = tstp::initial_structuring(records);
      dg::Diagnostics d = dg::check_structuring(s);
      if (d.empty()) {
        auto [ax, th] = dg::count_local_sentences(s.graph);
        os << path << ": ok (" << ax << " axioms, " << th << " theorems)\n";
      } else {
        ok = false;
        os << dg::render(d);
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    os << path << ": " << e.what() << "\n";
  }
  if (clean) *clean = ok;
  return os.str();
}

}  // namespace theoryforge::driver
