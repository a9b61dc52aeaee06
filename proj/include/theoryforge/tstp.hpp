#ifndef THEORYFORGE_TSTP_HPP
#define THEORYFORGE_TSTP_HPP

// TSTP/TPTP FOF ingestion: fof records with proof-dependency annotations,
// signature inference, support extraction, the initial single-node
// structuring, and the FOF printer.

#include <optional>
#include <string>
#include <vector>

#include "theoryforge/devgraph.hpp"
#include "theoryforge/fol.hpp"

namespace theoryforge::tstp {

struct ParseError : std::runtime_error {
  int line;
  int col;
  std::string expected;
  ParseError(int line, int col, const std::string& expected)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": expected " + expected),
        line(line), col(col), expected(expected) {}
};

struct EmptyTheoryError : std::runtime_error {
  EmptyTheoryError() : std::runtime_error("empty theory: no usable fof records") {}
};

struct UnknownNameError : std::runtime_error {
  UnknownNameError(const std::string& lemma, const std::string& ref)
      : std::runtime_error("support of '" + lemma + "' references unknown name '" + ref + "'") {}
};

// Annotation source expressions: nested functor terms, lists, atoms.
struct GeneralTerm {
  enum class Kind { Atom, Number, String, Variable, Application, List };
  Kind kind = Kind::Atom;
  std::string text;
  std::vector<GeneralTerm> args;
};

struct TstpRecord {
  std::string name;
  std::string raw_role;
  fol::Role role = fol::Role::Axiom;
  fol::FormulaPtr formula;
  std::optional<GeneralTerm> annotation;
  int line = 0;
};

// Every `fof(name, role, formula[, annotations]).` record in the text.
// Unsupported record kinds (cnf, tff, thf, include) and unmapped roles are
// reported through `warnings` and skipped. Free variables are closed
// universally, per TPTP semantics.
std::vector<TstpRecord> parse_tstp(const std::string& text,
                                   std::vector<std::string>* warnings = nullptr);

// Lowercase atoms anywhere inside the annotation term (functor names
// included); support references are the ones that match record names.
std::vector<std::string> annotation_leaves(const GeneralTerm& t);

// Support sets from annotation leaves that name other records; a record never
// supports itself. Cycles are reported by the caller via check_support.
dg::SupportMapping extract_support(const std::vector<TstpRecord>& records);

// Union of symbols_of over all record formulas; throws ArityClashError.
fol::SymbolSet infer_signature(const std::vector<TstpRecord>& records);

// One node holding all declarations, axioms and lemmas; the reference triple
// is its own content. Throws EmptyTheoryError and propagates signature and
// support problems.
dg::Structuring initial_structuring(const std::vector<TstpRecord>& records,
                                    const std::string& node_id = "theory");

// TPTP FOF rendering; reparses to an alpha-equal formula.
std::string print_fof(const fol::FormulaPtr& f);

// Parses a single FOF formula (used by the JSON importer).
fol::FormulaPtr parse_formula(const std::string& text);

}  // namespace theoryforge::tstp

#endif
