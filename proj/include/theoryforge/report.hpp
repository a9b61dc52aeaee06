#ifndef THEORYFORGE_REPORT_HPP
#define THEORYFORGE_REPORT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace theoryforge::report {

struct EmptyTheoryError : std::runtime_error {
  EmptyTheoryError() : std::runtime_error("reduction metric over an empty theory") {}
};

// Ceiling percentage of the drop in axioms + theorems.
int reduction_metric(int axioms_initial, int theorems_initial, int axioms_final, int theorems_final);

struct Report {
  std::string article;
  int axioms_initial = 0;
  int axioms_final = 0;
  int theorems_initial = 0;
  int theorems_final = 0;
  int reduction_percent = 0;
  bool timed_out = false;
  double wall_time_s = 0.0;
  std::string status = "ok";  // "ok" or an error note
};

// Aligned text table and the machine-readable CSV; both carry the same
// fields in the same order.
std::string render_table(const std::vector<Report>& rows);
std::string render_csv(const std::vector<Report>& rows);

}  // namespace theoryforge::report

#endif
