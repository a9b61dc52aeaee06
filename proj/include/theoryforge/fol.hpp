#ifndef THEORYFORGE_FOL_HPP
#define THEORYFORGE_FOL_HPP

// Untyped first-order formulas, signature symbols with arities, signature
// morphisms, alpha equivalence, and renaming-isomorphism search.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace theoryforge::fol {

struct ArityClashError : std::runtime_error {
  std::string symbol;
  int first;
  int second;
  ArityClashError(const std::string& sym, int a, int b)
      : std::runtime_error("arity clash on '" + sym + "': " + std::to_string(a) +
                           " vs " + std::to_string(b)),
        symbol(sym), first(a), second(b) {}
};

// ---------------------------------------------------------------------------
// Terms and formulas. Immutable trees with shared substructure.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Variable, Application };
  Kind kind;
  std::string name;           // variable name, or function symbol
  std::vector<TermPtr> args;  // empty for variables and constants
};

TermPtr var(std::string name);
TermPtr app(std::string fn, std::vector<TermPtr> args = {});

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Forall, Exists, And, Or, Implies, Iff, Not, Equal, Atom };
  Kind kind;
  std::vector<std::string> binders;  // Forall/Exists
  FormulaPtr left;                   // binary lhs, Not operand, quantifier body
  FormulaPtr right;                  // binary rhs
  std::string pred;                  // Atom
  std::vector<TermPtr> args;         // Atom arguments, or the two Equal sides
};

FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body);
FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr lnot(FormulaPtr a);
FormulaPtr equal(TermPtr a, TermPtr b);
FormulaPtr atom(std::string pred, std::vector<TermPtr> args = {});

// Variables free in f (empty for well-formed sentences).
std::set<std::string> free_variables(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Signature symbols.

enum class SymbolKind { Function, Predicate };

struct SymbolDecl {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Function;

  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
  friend auto operator<=>(const SymbolDecl&, const SymbolDecl&) = default;
};

using SymbolSet = std::set<SymbolDecl>;

std::string to_string(const SymbolDecl& s);

// Non-logical symbols occurring in f, with their inferred arities.
// Equality, connectives, quantifiers, and variables are excluded.
// Throws ArityClashError if one symbol occurs with two argument counts.
SymbolSet symbols_of(const FormulaPtr& f);

// Inserts everything from src into dst; throws ArityClashError if the union
// would hold one (name, kind) with two arities.
void merge_symbols(SymbolSet& dst, const SymbolSet& src);

// True iff no (name, kind) appears with two different arities.
bool signature_consistent(const SymbolSet& sig);

// ---------------------------------------------------------------------------
// Signature morphisms: kind-separated finite renamings, identity outside the
// mapped domain. Arities live in signatures, so preservation is checked at the
// application sites.

class SignatureMorphism {
 public:
  SignatureMorphism() = default;

  static SignatureMorphism identity() { return {}; }
  static SignatureMorphism of(std::map<std::string, std::string> fns,
                              std::map<std::string, std::string> preds);

  void add(SymbolKind kind, const std::string& from, const std::string& to);
  std::string apply(SymbolKind kind, const std::string& name) const;
  SymbolDecl apply(const SymbolDecl& s) const;

  bool is_identity() const { return fn_.empty() && pred_.empty(); }
  // True iff every symbol in syms maps to itself.
  bool fixes(const SymbolSet& syms) const;

  // Entries whose source symbol lies in sig; everything else reverts to the
  // identity default.
  SignatureMorphism restricted_to(const SymbolSet& sig) const;

  const std::map<std::string, std::string>& functions() const { return fn_; }
  const std::map<std::string, std::string>& predicates() const { return pred_; }

  std::string to_string() const;

  friend bool operator==(const SignatureMorphism&, const SignatureMorphism&) = default;
  friend auto operator<=>(const SignatureMorphism&, const SignatureMorphism&) = default;

 private:
  // Invariant: no entry maps a name to itself.
  std::map<std::string, std::string> fn_;
  std::map<std::string, std::string> pred_;
};

// apply(compose(outer, inner), f) == apply(outer, apply(inner, f)).
SignatureMorphism compose(const SignatureMorphism& outer, const SignatureMorphism& inner);

// Homomorphic replacement of every symbol occurrence; bound variables are
// untouched. Throws ArityClashError if the images of f's symbols clash.
FormulaPtr apply_morphism(const SignatureMorphism& sigma, const FormulaPtr& f);

// Maps every declaration; clashing images coexist in the result (signature
// validity is diagnosed by the graph layer, not here).
SymbolSet map_symbols(const SignatureMorphism& sigma, const SymbolSet& sig);

// ---------------------------------------------------------------------------
// Alpha handling.

// True iff f and g are identical up to a consistent renaming of bound
// variables. Both are expected to be closed.
bool alpha_equal(const FormulaPtr& f, const FormulaPtr& g);

// Canonical de Bruijn rendering; equal strings iff alpha-equal formulas.
std::string alpha_fingerprint(const FormulaPtr& f);

// Like alpha_fingerprint but with symbol names erased (kind/arity kept);
// a renaming can only relate formulas with equal skeletons.
std::string skeleton_fingerprint(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Named sentences.

enum class Role { Axiom, Lemma };

inline const char* to_string(Role r) { return r == Role::Axiom ? "axiom" : "lemma"; }

struct NamedSentence {
  std::string name;       // display name (mapped images carry a derived name)
  std::string base_name;  // name of the original local sentence
  std::string base_fp;    // alpha class of the original local sentence
  Role role = Role::Axiom;
  FormulaPtr formula;
  std::string alpha_fp;
  std::string skeleton_fp;
  SymbolSet symbols;

  static NamedSentence make(std::string name, Role role, FormulaPtr formula);
};

// Image of s under sigma. The display name stays put when the formula's alpha
// class is unchanged and otherwise becomes base_name + "@" + hash(image class).
NamedSentence map_sentence(const SignatureMorphism& sigma, const NamedSentence& s);

// Stable 64-bit FNV-1a, hex encoded and truncated; used for derived names.
std::string short_hash(const std::string& text);

// ---------------------------------------------------------------------------
// Renaming-isomorphism search.

struct RenamingResult {
  SignatureMorphism morphism;
  std::map<std::string, std::string> correspondence;  // source name -> target name
};

using RenamingFilter =
    std::function<bool(const SignatureMorphism&, const std::map<std::string, std::string>&)>;

// Searches for an injective renaming sigma, identity on frozen symbols, and a
// bijective correspondence pairing each source sentence with a role-matching
// target sentence such that apply_morphism(sigma, s) is alpha-equal to the
// paired target. Candidates are explored by structural fingerprint (ties in
// input order); the first success is returned.
std::optional<RenamingResult> find_renaming(const std::vector<NamedSentence>& source,
                                            const std::vector<NamedSentence>& target,
                                            const SymbolSet& frozen);

// find_renaming with an initial partial morphism that the result must extend,
// and an acceptance filter evaluated on every complete candidate (search
// continues when it declines). preset entries count as constraints, not as
// frozen symbols.
std::optional<RenamingResult> find_renaming_constrained(
    const std::vector<NamedSentence>& source, const std::vector<NamedSentence>& target,
    const SymbolSet& frozen, const SignatureMorphism& preset, const RenamingFilter& accept);

// Injective but not necessarily surjective variant: each source sentence is
// paired with a distinct target sentence; unmatched targets are permitted.
std::optional<RenamingResult> find_embedding(const std::vector<NamedSentence>& source,
                                             const std::vector<NamedSentence>& target,
                                             const SymbolSet& frozen,
                                             const SignatureMorphism& preset,
                                             const RenamingFilter& accept);

}  // namespace theoryforge::fol

#endif
