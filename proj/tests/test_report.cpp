#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace theoryforge;
using report::reduction_metric;

TEST_CASE("reduction_metric reproduces the thirteen evaluation rows exactly") {
  struct Row {
    const char* article;
    int ax_i, ax_f, th_i, th_f, reduction;
  };
  // Axioms and Theorems columns read initial / final.
  const Row rows[] = {
      {"binop_2", 21, 19, 28, 28, 5},  {"bintree1", 62, 61, 16, 16, 2},
      {"cfuncdom", 25, 24, 40, 40, 2}, {"ff_siec", 52, 51, 32, 32, 2},
      {"finsub_1", 38, 37, 16, 16, 2}, {"heine", 96, 95, 13, 13, 1},
      {"membered", 17, 17, 36, 16, 38}, {"mssubfam", 84, 83, 55, 55, 1},
      {"msualg_1", 49, 48, 13, 13, 2}, {"power", 103, 102, 61, 61, 1},
      {"qc_lang1", 86, 85, 23, 23, 1}, {"rsspace", 46, 45, 20, 20, 2},
      {"setfam_1", 51, 48, 44, 44, 4},
  };
  for (const auto& r : rows) {
    CAPTURE(r.article);
    CHECK(reduction_metric(r.ax_i, r.th_i, r.ax_f, r.th_f) == r.reduction);
  }
}

TEST_CASE("reduction_metric: identity, bounds, empty theory") {
  CHECK(reduction_metric(10, 5, 10, 5) == 0);
  CHECK(reduction_metric(4, 0, 0, 0) == 100);
  CHECK_THROWS_AS(reduction_metric(0, 0, 0, 0), report::EmptyTheoryError);
}

TEST_CASE("table and CSV agree field for field") {
  std::vector<report::Report> rows;
  report::Report a;
  a.article = "field.p";
  a.axioms_initial = 9;
  a.axioms_final = 5;
  a.reduction_percent = 45;
  a.wall_time_s = 0.125;
  rows.push_back(a);
  report::Report b;
  b.article = "broken.p";
  b.status = "error: parse error at 3:1: expected a record";
  b.timed_out = false;
  rows.push_back(b);

  std::string table = report::render_table(rows);
  std::string csv = report::render_csv(rows);
  CHECK(table.find("field.p") != std::string::npos);
  CHECK(table.find("45%") != std::string::npos);
  CHECK(csv.find("field.p,9,5,0,0,45,no,0.125,ok") != std::string::npos);
  CHECK(csv.rfind("article,axioms_initial,axioms_final,theorems_initial,theorems_final,"
                  "reduction,timeout,wall_time,status",
                  0) == 0);

  // every table row's fields appear in the CSV row in the same order
  std::istringstream tin(table), cin(csv);
  std::string tline, cline;
  std::getline(tin, tline);
  std::getline(cin, cline);
  int row = 0;
  while (std::getline(tin, tline) && std::getline(cin, cline)) {
    ++row;
    std::istringstream fields(tline);
    std::string field;
    size_t at = 0;
    int idx = 0;
    while (fields >> field) {
      if (idx == 5 && !field.empty() && field.back() == '%') field.pop_back();
      if (idx >= 8) break;  // the status column may contain spaces
      auto pos = cline.find(field, at);
      CAPTURE(row);
      CAPTURE(field);
      REQUIRE(pos != std::string::npos);
      at = pos + field.size();
      ++idx;
    }
  }
  CHECK(row == 2);
}
