// Acceptance suite: end-to-end checks over the whole pipeline, one pass/fail
// line per criterion.

#include <chrono>
#include <iomanip>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "theoryforge/dot.hpp"

using namespace theoryforge;
using namespace tfh;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool cond, const std::string& what) {
  if (!cond) {
    ++failures;
    notes.push_back(what);
  }
}

struct Criterion {
  int number;
  const char* title;
  std::function<void()> run;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --------------------------------------------------------------------------
// 1. Scripted Field pipeline.

void criterion1() {
  auto t0 = Clock::now();
  dg::Structuring s = field_initial();
  expect(dg::check_structuring(s).empty(), "initial Field structuring invalid");

  const dg::Node& theory = s.graph.nodes.at("theory");
  auto lower = select(theory, {"plus", "times", "zero", "one", "minus", "inv"},
                      {"plus_assoc", "plus_comm", "plus_ident", "plus_inverse", "times_assoc",
                       "times_comm", "times_ident", "times_inverse"});
  auto upper = select(theory, {}, {"distributivity"});
  s = rules::vertical_split(s, "theory", lower, upper, "groups", "field_top");
  expect(dg::check_structuring(s).empty(), "structuring invalid after the vertical split");

  const dg::Node& groups = s.graph.nodes.at("groups");
  s = rules::horizontal_split(
      s, "groups",
      {select(groups, {"plus", "zero", "minus"},
              {"plus_assoc", "plus_comm", "plus_ident", "plus_inverse"}),
       select(groups, {"times", "one", "inv"},
              {"times_assoc", "times_comm", "times_ident", "times_inverse"})},
      {"plus_grp", "times_grp"});
  expect(dg::check_structuring(s).empty(), "structuring invalid after the horizontal split");

  s = rules::factorize(s, field_candidate());
  expect(dg::check_structuring(s).empty(), "structuring invalid after factorization");

  auto cleaned = tactics::cleanup(s);
  expect(cleaned.has_value(), "cleanup found nothing to do");
  if (cleaned) s = cleaned->result;
  expect(dg::check_structuring(s).empty(), "structuring invalid after cleanup");

  auto [ax, lem] = dg::count_local_sentences(s.graph);
  expect(ax == 5 && lem == 0, "final graph does not hold exactly 5 local axioms");
  expect(s.graph.nodes.count("abelian_group") == 1 &&
             s.graph.nodes.at("abelian_group").axioms.size() == 4,
         "factor node does not hold 4 axioms");
  expect(s.graph.nodes.count("field_top") == 1 && s.graph.nodes.at("field_top").axioms.size() == 1,
         "top node does not hold 1 axiom");

  auto sigma1 = fol::SignatureMorphism::of({{"o", "plus"}, {"e", "zero"}, {"i", "minus"}}, {});
  auto sigma2 = fol::SignatureMorphism::of({{"o", "times"}, {"e", "one"}, {"i", "inv"}}, {});
  int with_sigma1 = 0, with_sigma2 = 0;
  expect(s.graph.links.size() == 2, "final graph does not have exactly two links");
  for (const auto& l : s.graph.links) {
    if (l.source == "abelian_group" && l.target == "field_top") {
      if (l.morphism == sigma1) ++with_sigma1;
      if (l.morphism == sigma2) ++with_sigma2;
    }
  }
  expect(with_sigma1 == 1 && with_sigma2 == 1, "links are not labeled sigma_1 and sigma_2");
  expect(seconds_since(t0) < 1.0, "scripted pipeline exceeded 1 s");
}

// --------------------------------------------------------------------------
// 2. Reduction metric against the published evaluation rows.

void criterion2() {
  struct Row {
    const char* article;
    int ax_i, ax_f, th_i, th_f, reduction;
  };
  const Row rows[] = {
      {"binop_2", 21, 19, 28, 28, 5},   {"bintree1", 62, 61, 16, 16, 2},
      {"cfuncdom", 25, 24, 40, 40, 2},  {"ff_siec", 52, 51, 32, 32, 2},
      {"finsub_1", 38, 37, 16, 16, 2},  {"heine", 96, 95, 13, 13, 1},
      {"membered", 17, 17, 36, 16, 38}, {"mssubfam", 84, 83, 55, 55, 1},
      {"msualg_1", 49, 48, 13, 13, 2},  {"power", 103, 102, 61, 61, 1},
      {"qc_lang1", 86, 85, 23, 23, 1},  {"rsspace", 46, 45, 20, 20, 2},
      {"setfam_1", 51, 48, 44, 44, 4},
  };
  for (const auto& r : rows) {
    int got = report::reduction_metric(r.ax_i, r.th_i, r.ax_f, r.th_f);
    expect(got == r.reduction, std::string(r.article) + ": expected " +
                                   std::to_string(r.reduction) + "%, got " + std::to_string(got));
  }
}

// --------------------------------------------------------------------------
// 3. membered-style desk-scale factorization via the automatic procedure.

dg::Structuring criterion3_result;  // reused by criteria 6 and 7

void criterion3() {
  auto t0 = Clock::now();
  dg::Structuring s = load_structuring("membered_style.p");
  auto [ax0, th0] = dg::count_local_sentences(s.graph);
  expect(th0 == 20, "corpus does not hold 20 theorems");

  tactics::Budget b;
  b.wall_seconds = 300.0;
  auto [out, rep] = tactics::auto_structure(s, b);
  expect(!rep.timed_out, "automatic procedure timed out");
  expect(dg::check_structuring(out).empty(), "final structuring invalid");
  expect(rep.theorems_initial == 20 && rep.theorems_final == 4,
         "theorems were not reduced from 20 to 4 (got " + std::to_string(rep.theorems_final) + ")");
  expect(rep.axioms_final == rep.axioms_initial,
         "axioms changed: " + std::to_string(rep.axioms_initial) + " -> " +
             std::to_string(rep.axioms_final));
  int metric = report::reduction_metric(rep.axioms_initial, rep.theorems_initial, rep.axioms_final,
                                        rep.theorems_final);
  int table = report::reduction_metric(ax0, th0, rep.axioms_final, rep.theorems_final);
  expect(metric == table, "reported reduction disagrees with the metric");
  expect(seconds_since(t0) < 10.0, "run exceeded 10 s");
  criterion3_result = std::move(out);
}

// --------------------------------------------------------------------------
// 4 and 5. Theorem 1 property suite plus the appendix domain laws on the same
// random corpus.

std::vector<dg::Structuring> sampled_results;  // reused by criterion 6

void criterion45(bool check_laws) {
  tfh::Gen g(20260810);
  int structurings = 0, applications = 0, hsplits = 0, factorizations = 0;
  while (structurings < 200) {
    dg::Structuring s = g.random_structuring();
    ++structurings;
    dg::Domain ref = s.reference;
    int steps = g.irand(3, 10);
    for (int k = 0; k < steps; ++k) {
      StepInfo info;
      auto next = random_rule_step(g, s, &info);
      if (!next) break;
      ++applications;

      dg::Diagnostics diags = dg::check_structuring(*next);
      expect(diags.empty(), "structuring broken after a " + info.kind + ": " + dg::render(diags));

      // Root (Sigma, Ax) preserved exactly, Lem non-decreasing.
      dg::Analysis a(next->graph);
      dg::Domain roots_now;
      for (const auto& r : a.roots()) roots_now.merge(a.domain(r));
      expect(roots_now.sig == ref.sig, "root signature drifted under a " + info.kind);
      expect(roots_now.axioms.size() == ref.axioms.size() &&
                 std::equal(roots_now.axioms.begin(), roots_now.axioms.end(), ref.axioms.begin(),
                            [](const auto& x, const auto& y) { return x.first == y.first; }),
             "root axioms drifted under a " + info.kind);
      for (const auto& [fp, se] : ref.lemmas)
        expect(roots_now.lemmas.count(fp) == 1, "a root lemma vanished under a " + info.kind);

      if (check_laws && info.kind == "hsplit") {
        ++hsplits;
        std::set<dg::EntityKey> united;
        for (const auto& sid : info.sibling_ids)
          for (const auto& key : domain_keys(a, sid)) united.insert(key);
        expect(united == info.old_node_domain, "horizontal sibling domain union law failed");
      }
      if (check_laws && info.kind == "factorize") {
        ++factorizations;
        for (size_t j = 0; j < info.members.size(); ++j) {
          std::set<dg::EntityKey> want = info.old_member_domains[j];
          for (const auto& key : info.mapped_factor_lemmas[j]) want.insert(key);
          expect(j < info.instance_ids.size(), "factorization lost an instance id");
          if (j < info.instance_ids.size()) {
            expect(domain_keys(a, info.instance_ids[j]) == want,
                   "factorization instance-domain law failed");
          }
        }
      }
      s = std::move(*next);
      if (diags.empty() && sampled_results.size() < 20 && g.chance(0.05))
        sampled_results.push_back(s);
    }
  }
  expect(applications >= 400, "too few rule applications exercised: " + std::to_string(applications));
  if (check_laws) {
    expect(hsplits >= 20, "too few horizontal splits for the domain law: " + std::to_string(hsplits));
    expect(factorizations >= 5,
           "too few factorizations for the instance law: " + std::to_string(factorizations));
  }
}

// --------------------------------------------------------------------------
// 6. Round trips.

void criterion6() {
  // TSTP print/parse alpha equality over a >= 100 sentence corpus.
  int sentences = 0;
  for (const char* file : {"field.p", "membered_style.p"}) {
    for (const auto& r : tstp::parse_tstp(driver::read_file(data_path(file)))) {
      ++sentences;
      expect(fol::alpha_equal(tstp::parse_formula(tstp::print_fof(r.formula)), r.formula),
             "print/parse round trip failed in " + std::string(file));
    }
  }
  tfh::Gen g(61);
  fol::SymbolSet pool{{"c", 0, fol::SymbolKind::Function},  {"f", 1, fol::SymbolKind::Function},
                      {"g", 2, fol::SymbolKind::Function},  {"p", 1, fol::SymbolKind::Predicate},
                      {"r", 2, fol::SymbolKind::Predicate}, {"s", 0, fol::SymbolKind::Predicate}};
  while (sentences < 130) {
    ++sentences;
    auto f = g.random_closed_formula(pool);
    expect(fol::alpha_equal(tstp::parse_formula(tstp::print_fof(f)), f),
           "print/parse round trip failed on a generated formula");
  }
  expect(sentences >= 100, "round-trip corpus too small");

  // Graph documents from the graphs produced in criteria 1-4.
  std::vector<dg::Structuring> graphs{field_initial(), field_graph1(), field_graph2(),
                                      field_graph4(), criterion3_result};
  for (const auto& s : sampled_results) graphs.push_back(s);
  for (const auto& s : graphs) {
    dg::Structuring back = graph_json::import_document(graph_json::export_document(s));
    expect(entity_isomorphic(back, s), "graph document round trip is not entity-isomorphic");
    expect(dg::check_structuring(back).empty(), "re-imported structuring invalid");
  }
}

// --------------------------------------------------------------------------
// 7. Budget behavior.

void criterion7() {
  dg::Structuring s = load_structuring("membered_style.p");

  tactics::Budget zero;
  zero.wall_seconds.reset();
  zero.max_steps = 0;
  auto [same, rep0] = tactics::auto_structure(s, zero);
  expect(entity_isomorphic(same, s), "step limit 0 changed the graph");

  tactics::Budget tiny;
  tiny.wall_seconds = 0.001;
  auto [out, rep] = tactics::auto_structure(s, tiny);
  expect(rep.timed_out, "1 ms budget did not flag timed_out");
  expect(dg::check_structuring(out).empty(), "timed-out output is not a valid structuring");
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "scripted Field pipeline reaches the 5-axiom factorized graph", criterion1},
      {2, "reduction metric reproduces all 13 table rows", criterion2},
      {3, "membered-style corpus: 20 theorems factor down to 4", criterion3},
      {4, "Theorem 1 on 200 random structurings with random rule chains", [] { criterion45(false); }},
      {5, "appendix domain laws on the same random corpus", [] { criterion45(true); }},
      {6, "TSTP and graph-document round trips", criterion6},
      {7, "budget behavior: step limit 0 and 1 ms wall clock", criterion7},
  };

  int failed_criteria = 0;
  for (const auto& c : criteria) {
    int before = failures;
    notes.clear();
    auto t0 = Clock::now();
    try {
      c.run();
    } catch (const std::exception& e) {
      ++failures;
      notes.push_back(std::string("exception: ") + e.what());
    }
    bool ok = failures == before;
    std::ostringstream line;
    line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title << " ("
         << std::fixed << std::setprecision(2) << seconds_since(t0) << "s)";
    std::cout << line.str() << "\n";
    for (const auto& n : notes) std::cout << "        " << n << "\n";
    if (!ok) ++failed_criteria;
  }
  if (failed_criteria == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failed_criteria << " criterion(s) failed\n";
  return 1;
}
