#include "theoryforge/report.hpp"

#include <iomanip>
#include <sstream>

namespace theoryforge::report {

int reduction_metric(int axioms_initial, int theorems_initial, int axioms_final,
                     int theorems_final) {
  long total = static_cast<long>(axioms_initial) + theorems_initial;
  if (total <= 0) throw EmptyTheoryError();
  long removed = total - (static_cast<long>(axioms_final) + theorems_final);
  // ceil(100 * removed / total), removed may be 0
  long pct = (100 * removed + total - 1) / total;
  if (pct < 0) pct = 0;
  if (pct > 100) pct = 100;
  return static_cast<int>(pct);
}

namespace {

std::vector<std::vector<std::string>> cells(const std::vector<Report>& rows) {
  std::vector<std::vector<std::string>> out;
  out.push_back({"article", "axioms_initial", "axioms_final", "theorems_initial", "theorems_final",
                 "reduction", "timeout", "wall_time", "status"});
  for (const auto& r : rows) {
    std::ostringstream wt;
    wt << std::fixed << std::setprecision(3) << r.wall_time_s;
    out.push_back({r.article, std::to_string(r.axioms_initial), std::to_string(r.axioms_final),
                   std::to_string(r.theorems_initial), std::to_string(r.theorems_final),
                   std::to_string(r.reduction_percent) + "%", r.timed_out ? "yes" : "no", wt.str(),
                   r.status});
  }
  return out;
}

}  // namespace

std::string render_table(const std::vector<Report>& rows) {
  auto grid = cells(rows);
  std::vector<size_t> widths(grid[0].size(), 0);
  for (const auto& row : grid)
    for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  std::ostringstream os;
  for (const auto& row : grid) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(widths[i]) + 2) << row[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const std::vector<Report>& rows) {
  auto grid = cells(rows);
  std::ostringstream os;
  for (const auto& row : grid) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      std::string cell = row[i];
      if (i + 1 == row.size() && cell.find(',') != std::string::npos) {
        std::string quoted = "\"";
        for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
        cell = quoted + "\"";
      }
      // reduction column carries the bare number in CSV
      if (i == 5 && !cell.empty() && cell.back() == '%') cell.pop_back();
      os << cell;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace theoryforge::report
