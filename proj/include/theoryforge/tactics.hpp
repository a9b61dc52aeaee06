#ifndef THEORYFORGE_TACTICS_HPP
#define THEORYFORGE_TACTICS_HPP

// Dependency relation over local domains, the heuristic tactics, the tactic
// combinator language, and the automatic structuring procedure.

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "theoryforge/rules.hpp"

namespace theoryforge::tactics {

// Dependency relation on one node's local domain: a sentence depends on the
// local symbols occurring in it, a lemma also on its local supports; symbol
// declarations are always independent. Dependencies on imported entities are
// dropped but recorded as external markers.
struct DependencyGraph {
  std::vector<dg::EntityKey> vertices;
  std::map<dg::EntityKey, std::set<dg::EntityKey>> uses;  // element -> what it depends on
  std::map<dg::EntityKey, std::set<std::string>> external;

  std::vector<std::vector<dg::EntityKey>> components() const;  // weakly connected
  std::set<dg::EntityKey> minimal() const;  // depend on nothing
  std::set<dg::EntityKey> maximal() const;  // nothing depends on them
};

DependencyGraph dependency_graph(const dg::Structuring& s, const dg::NodeId& node);

struct StepResult {
  dg::Structuring result;
  std::string note;
};

// The basic tactics. std::nullopt means not applicable; any returned
// structuring passed its rule's precondition checks.
std::optional<StepResult> split_horizontal(const dg::Structuring& s);
std::optional<StepResult> split_vertical_maximal(const dg::Structuring& s);
std::optional<StepResult> split_vertical_minimal(const dg::Structuring& s);
std::optional<StepResult> factorize_step(const dg::Structuring& s);
std::optional<StepResult> cleanup(const dg::Structuring& s);

// Candidate search used by factorize_step; exposed for tests and the random
// rule-application suites.
std::optional<rules::FactorizationCandidate> find_factorization_candidate(const dg::Structuring& s);

// ---------------------------------------------------------------------------
// Tactic expressions: T* | T+ | T;T | T onfail T over the basic tactics.

struct TacticExpr;
using TacticPtr = std::shared_ptr<const TacticExpr>;

struct TacticExpr {
  enum class Kind { Basic, Star, Plus, Seq, OnFail };
  enum class Basic { SplitHorizontal, SplitVerticalMaximal, SplitVerticalMinimal, Factorize, Cleanup };
  Kind kind = Kind::Basic;
  Basic basic = Basic::SplitHorizontal;
  TacticPtr left, right;
};

// Text syntax: basic tactic names, postfix * and +, infix ; and onfail,
// parentheses. RemoveSuperfluousEmptyTheories and the
// SplitVertically...Entries spellings are accepted as synonyms.
TacticPtr parse_tactic(const std::string& text);
std::string to_string(const TacticPtr& t);

struct Budget {
  std::optional<double> wall_seconds = 300.0;
  std::optional<long> max_steps;
};

enum class Outcome { Progressed, Failed, TimedOut };

struct RunResult {
  dg::Structuring result;
  Outcome outcome = Outcome::Failed;
  std::vector<std::string> trace;
};

// Star repeats until failure and always succeeds; Plus requires one success;
// a failed Seq returns its input unchanged; OnFail runs the second tactic on
// the original input only if the first failed. The budget is checked between
// basic-tactic applications; on timeout the last fully applied structuring is
// returned.
RunResult run_tactic(const TacticPtr& t, const dg::Structuring& s, const Budget& b);

struct AutoReport {
  int axioms_initial = 0;
  int theorems_initial = 0;
  int axioms_final = 0;
  int theorems_final = 0;
  bool timed_out = false;
  std::vector<std::string> trace;
};

// The built-in automatic procedure: the init tactic (vertical and horizontal
// splitting plus cleanup) followed by repeated factorize/cleanup/
// vertical-split rounds.
const char* overall_tactic_text();
std::pair<dg::Structuring, AutoReport> auto_structure(const dg::Structuring& s, const Budget& b);

}  // namespace theoryforge::tactics

#endif
