#ifndef THEORYFORGE_TESTS_HELPERS_HPP
#define THEORYFORGE_TESTS_HELPERS_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "theoryforge/driver.hpp"
#include "theoryforge/graph_json.hpp"
#include "theoryforge/rules.hpp"
#include "theoryforge/tactics.hpp"
#include "theoryforge/tstp.hpp"

namespace tfh {

using namespace theoryforge;

std::string data_path(const std::string& name);
dg::Structuring load_structuring(const std::string& file);

fol::FormulaPtr pf(const std::string& text);
fol::NamedSentence mk(const std::string& name, fol::Role role, const std::string& text);

// Select node-local content by sentence/symbol names.
rules::LocalContent select(const dg::Node& n, const std::vector<std::string>& symbol_names,
                           const std::vector<std::string>& sentence_names);

// The Field pipeline stages used across suites.
dg::Structuring field_initial();
dg::Structuring field_graph1();  // after the vertical split (distributivity on top)
dg::Structuring field_graph2();  // after the horizontal split (plus/times groups)
rules::FactorizationCandidate field_candidate();  // o/e/i factor content
dg::Structuring field_graph4();  // after factorization

// Entity-level graph isomorphism: a node bijection preserving local content
// (entity keys and names) and links with equal morphisms, plus equal support
// and reference data.
bool entity_isomorphic(const dg::Structuring& a, const dg::Structuring& b);

// ---------------------------------------------------------------------------
// Random structurings and random applicable rule steps.

struct Gen {
  std::mt19937_64 rng;
  int uniq = 0;

  explicit Gen(uint64_t seed) : rng(seed) {}

  int irand(int lo, int hi);
  bool chance(double p);
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(irand(0, static_cast<int>(v.size()) - 1))];
  }

  fol::FormulaPtr random_closed_formula(const fol::SymbolSet& pool);
  dg::Structuring random_structuring();  // well defined, <= 8 nodes, <= 40 entities
};

struct StepInfo {
  std::string kind;
  // horizontal split law data
  dg::NodeId split_node;
  std::vector<dg::NodeId> sibling_ids;
  std::set<dg::EntityKey> old_node_domain;
  // factorization law data
  std::vector<dg::NodeId> members;
  std::vector<dg::NodeId> instance_ids;
  std::vector<std::set<dg::EntityKey>> old_member_domains;
  std::vector<std::set<dg::EntityKey>> mapped_factor_lemmas;
};

std::optional<dg::Structuring> random_rule_step(Gen& g, const dg::Structuring& s, StepInfo* info);

std::set<dg::EntityKey> domain_keys(const dg::Analysis& a, const dg::NodeId& n);

}  // namespace tfh

#endif
