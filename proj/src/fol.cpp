#include "theoryforge/fol.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>

namespace theoryforge::fol {

TermPtr var(std::string name) {
  return std::make_shared<Term>(Term{Term::Kind::Variable, std::move(name), {}});
}

TermPtr app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Term::Kind::Application, std::move(fn), std::move(args)});
}

static FormulaPtr quantified(Formula::Kind k, std::vector<std::string> vars, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->binders = std::move(vars);
  f->left = std::move(body);
  return f;
}

FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body) {
  return quantified(Formula::Kind::Forall, std::move(vars), std::move(body));
}

FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body) {
  return quantified(Formula::Kind::Exists, std::move(vars), std::move(body));
}

static FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

FormulaPtr land(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Implies, std::move(a), std::move(b)); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Iff, std::move(a), std::move(b)); }

FormulaPtr lnot(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Not;
  f->left = std::move(a);
  return f;
}

FormulaPtr equal(TermPtr a, TermPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Equal;
  f->args = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr atom(std::string pred, std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->pred = std::move(pred);
  f->args = std::move(args);
  return f;
}

// ---------------------------------------------------------------------------

namespace {

void free_vars_term(const TermPtr& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (t->kind == Term::Kind::Variable) {
    if (std::find(bound.rbegin(), bound.rend(), t->name) == bound.rend()) out.insert(t->name);
    return;
  }
  for (const auto& a : t->args) free_vars_term(a, bound, out);
}

void free_vars_formula(const FormulaPtr& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      for (const auto& v : f->binders) bound.push_back(v);
      free_vars_formula(f->left, bound, out);
      bound.resize(bound.size() - f->binders.size());
      return;
    }
    case Formula::Kind::Not:
      free_vars_formula(f->left, bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars_formula(f->left, bound, out);
      free_vars_formula(f->right, bound, out);
      return;
    case Formula::Kind::Equal:
    case Formula::Kind::Atom:
      for (const auto& t : f->args) free_vars_term(t, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_formula(f, bound, out);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(const SymbolDecl& s) {
  return s.name + "/" + std::to_string(s.arity) + (s.kind == SymbolKind::Predicate ? "p" : "f");
}

namespace {

void record_symbol(SymbolSet& out, const std::string& name, int arity, SymbolKind kind) {
  auto it = out.lower_bound(SymbolDecl{name, std::numeric_limits<int>::min(), SymbolKind::Function});
  for (; it != out.end() && it->name == name; ++it) {
    if (it->kind == kind && it->arity != arity) throw ArityClashError(name, it->arity, arity);
  }
  out.insert(SymbolDecl{name, arity, kind});
}

void symbols_term(const TermPtr& t, std::vector<std::string>& bound, SymbolSet& out) {
  if (t->kind == Term::Kind::Variable) return;
  record_symbol(out, t->name, static_cast<int>(t->args.size()), SymbolKind::Function);
  for (const auto& a : t->args) symbols_term(a, bound, out);
}

void symbols_formula(const FormulaPtr& f, std::vector<std::string>& bound, SymbolSet& out) {
  switch (f->kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      for (const auto& v : f->binders) bound.push_back(v);
      symbols_formula(f->left, bound, out);
      bound.resize(bound.size() - f->binders.size());
      return;
    }
    case Formula::Kind::Not:
      symbols_formula(f->left, bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      symbols_formula(f->left, bound, out);
      symbols_formula(f->right, bound, out);
      return;
    case Formula::Kind::Equal:
      for (const auto& t : f->args) symbols_term(t, bound, out);
      return;
    case Formula::Kind::Atom:
      record_symbol(out, f->pred, static_cast<int>(f->args.size()), SymbolKind::Predicate);
      for (const auto& t : f->args) symbols_term(t, bound, out);
      return;
  }
}

}  // namespace

SymbolSet symbols_of(const FormulaPtr& f) {
  SymbolSet out;
  std::vector<std::string> bound;
  symbols_formula(f, bound, out);
  return out;
}

void merge_symbols(SymbolSet& dst, const SymbolSet& src) {
  for (const auto& d : src) record_symbol(dst, d.name, d.arity, d.kind);
}

bool signature_consistent(const SymbolSet& sig) {
  // Set order is (name, arity, kind); scan for same (name, kind) twice.
  for (auto it = sig.begin(); it != sig.end(); ++it) {
    auto jt = std::next(it);
    for (; jt != sig.end() && jt->name == it->name; ++jt) {
      if (jt->kind == it->kind && jt->arity != it->arity) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

SignatureMorphism SignatureMorphism::of(std::map<std::string, std::string> fns,
                                        std::map<std::string, std::string> preds) {
  SignatureMorphism m;
  for (auto& [k, v] : fns) m.add(SymbolKind::Function, k, v);
  for (auto& [k, v] : preds) m.add(SymbolKind::Predicate, k, v);
  return m;
}

void SignatureMorphism::add(SymbolKind kind, const std::string& from, const std::string& to) {
  if (from == to) return;
  (kind == SymbolKind::Function ? fn_ : pred_)[from] = to;
}

std::string SignatureMorphism::apply(SymbolKind kind, const std::string& name) const {
  const auto& m = kind == SymbolKind::Function ? fn_ : pred_;
  auto it = m.find(name);
  return it == m.end() ? name : it->second;
}

SymbolDecl SignatureMorphism::apply(const SymbolDecl& s) const {
  return SymbolDecl{apply(s.kind, s.name), s.arity, s.kind};
}

bool SignatureMorphism::fixes(const SymbolSet& syms) const {
  for (const auto& s : syms)
    if (apply(s.kind, s.name) != s.name) return false;
  return true;
}

SignatureMorphism SignatureMorphism::restricted_to(const SymbolSet& sig) const {
  SignatureMorphism out;
  for (const auto& s : sig) {
    const auto& img = apply(s.kind, s.name);
    if (img != s.name) out.add(s.kind, s.name, img);
  }
  return out;
}

std::string SignatureMorphism::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto dump = [&](const std::map<std::string, std::string>& m) {
    for (const auto& [k, v] : m) {
      if (!first) os << ",";
      first = false;
      os << k << "->" << v;
    }
  };
  dump(fn_);
  dump(pred_);
  return first ? "id" : os.str();
}

SignatureMorphism compose(const SignatureMorphism& outer, const SignatureMorphism& inner) {
  SignatureMorphism out;
  for (const auto& [k, v] : inner.functions()) out.add(SymbolKind::Function, k, outer.apply(SymbolKind::Function, v));
  for (const auto& [k, v] : inner.predicates()) out.add(SymbolKind::Predicate, k, outer.apply(SymbolKind::Predicate, v));
  for (const auto& [k, v] : outer.functions())
    if (!inner.functions().count(k)) out.add(SymbolKind::Function, k, v);
  for (const auto& [k, v] : outer.predicates())
    if (!inner.predicates().count(k)) out.add(SymbolKind::Predicate, k, v);
  return out;
}

namespace {

TermPtr map_term(const SignatureMorphism& sigma, const TermPtr& t) {
  if (t->kind == Term::Kind::Variable) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(map_term(sigma, a));
  return app(sigma.apply(SymbolKind::Function, t->name), std::move(args));
}

FormulaPtr map_formula(const SignatureMorphism& sigma, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Forall:
      return forall(f->binders, map_formula(sigma, f->left));
    case Formula::Kind::Exists:
      return exists(f->binders, map_formula(sigma, f->left));
    case Formula::Kind::Not:
      return lnot(map_formula(sigma, f->left));
    case Formula::Kind::And:
      return land(map_formula(sigma, f->left), map_formula(sigma, f->right));
    case Formula::Kind::Or:
      return lor(map_formula(sigma, f->left), map_formula(sigma, f->right));
    case Formula::Kind::Implies:
      return implies(map_formula(sigma, f->left), map_formula(sigma, f->right));
    case Formula::Kind::Iff:
      return iff(map_formula(sigma, f->left), map_formula(sigma, f->right));
    case Formula::Kind::Equal:
      return equal(map_term(sigma, f->args[0]), map_term(sigma, f->args[1]));
    case Formula::Kind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(map_term(sigma, a));
      return atom(sigma.apply(SymbolKind::Predicate, f->pred), std::move(args));
    }
  }
  return nullptr;  // unreachable
}

}  // namespace

FormulaPtr apply_morphism(const SignatureMorphism& sigma, const FormulaPtr& f) {
  // Mapping two distinct-arity symbols onto one name is a clash in f's
  // signature context.
  SymbolSet mapped;
  for (const auto& s : symbols_of(f)) record_symbol(mapped, sigma.apply(s.kind, s.name), s.arity, s.kind);
  return map_formula(sigma, f);
}

SymbolSet map_symbols(const SignatureMorphism& sigma, const SymbolSet& sig) {
  SymbolSet out;
  for (const auto& s : sig) out.insert(sigma.apply(s));
  return out;
}

// ---------------------------------------------------------------------------
// Alpha handling. Environments map variable names to binder indices.

namespace {

using Env = std::vector<std::string>;  // index = de Bruijn level

std::optional<size_t> level_of(const Env& env, const std::string& v) {
  for (size_t i = env.size(); i-- > 0;)
    if (env[i] == v) return i;
  return std::nullopt;
}

bool alpha_term(const TermPtr& a, const Env& ea, const TermPtr& b, const Env& eb) {
  if (a->kind != b->kind) return false;
  if (a->kind == Term::Kind::Variable) {
    auto la = level_of(ea, a->name), lb = level_of(eb, b->name);
    if (la.has_value() != lb.has_value()) return false;
    return la.has_value() ? *la == *lb : a->name == b->name;
  }
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!alpha_term(a->args[i], ea, b->args[i], eb)) return false;
  return true;
}

bool alpha_formula(const FormulaPtr& a, Env& ea, const FormulaPtr& b, Env& eb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (a->binders.size() != b->binders.size()) return false;
      for (const auto& v : a->binders) ea.push_back(v);
      for (const auto& v : b->binders) eb.push_back(v);
      bool ok = alpha_formula(a->left, ea, b->left, eb);
      ea.resize(ea.size() - a->binders.size());
      eb.resize(eb.size() - b->binders.size());
      return ok;
    }
    case Formula::Kind::Not:
      return alpha_formula(a->left, ea, b->left, eb);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return alpha_formula(a->left, ea, b->left, eb) && alpha_formula(a->right, ea, b->right, eb);
    case Formula::Kind::Equal:
    case Formula::Kind::Atom: {
      if (a->kind == Formula::Kind::Atom && a->pred != b->pred) return false;
      if (a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_term(a->args[i], ea, b->args[i], eb)) return false;
      return true;
    }
  }
  return false;
}

void fp_term(const TermPtr& t, const Env& env, bool skeleton, std::string& out) {
  if (t->kind == Term::Kind::Variable) {
    auto l = level_of(env, t->name);
    out += '#';
    out += l ? std::to_string(*l) : "?" + t->name;
    return;
  }
  if (skeleton)
    out += "f" + std::to_string(t->args.size());
  else
    out += t->name;
  if (!t->args.empty()) {
    out += '(';
    for (size_t i = 0; i < t->args.size(); ++i) {
      if (i) out += ',';
      fp_term(t->args[i], env, skeleton, out);
    }
    out += ')';
  }
}

void fp_formula(const FormulaPtr& f, Env& env, bool skeleton, std::string& out) {
  switch (f->kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out += f->kind == Formula::Kind::Forall ? '!' : '?';
      out += std::to_string(f->binders.size());
      out += '.';
      for (const auto& v : f->binders) env.push_back(v);
      fp_formula(f->left, env, skeleton, out);
      env.resize(env.size() - f->binders.size());
      return;
    }
    case Formula::Kind::Not:
      out += "~(";
      fp_formula(f->left, env, skeleton, out);
      out += ')';
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* op = f->kind == Formula::Kind::And       ? "&"
                       : f->kind == Formula::Kind::Or      ? "|"
                       : f->kind == Formula::Kind::Implies ? ">"
                                                           : "=";
      out += op;
      out += '(';
      fp_formula(f->left, env, skeleton, out);
      out += ',';
      fp_formula(f->right, env, skeleton, out);
      out += ')';
      return;
    }
    case Formula::Kind::Equal:
      out += "eq(";
      fp_term(f->args[0], env, skeleton, out);
      out += ',';
      fp_term(f->args[1], env, skeleton, out);
      out += ')';
      return;
    case Formula::Kind::Atom:
      out += '@';
      if (skeleton)
        out += "P" + std::to_string(f->args.size());
      else
        out += f->pred;
      if (!f->args.empty()) {
        out += '(';
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ',';
          fp_term(f->args[i], env, skeleton, out);
        }
        out += ')';
      }
      return;
  }
}

}  // namespace

bool alpha_equal(const FormulaPtr& f, const FormulaPtr& g) {
  Env ea, eb;
  return alpha_formula(f, ea, g, eb);
}

std::string alpha_fingerprint(const FormulaPtr& f) {
  std::string out;
  Env env;
  fp_formula(f, env, false, out);
  return out;
}

std::string skeleton_fingerprint(const FormulaPtr& f) {
  std::string out;
  Env env;
  fp_formula(f, env, true, out);
  return out;
}

// ---------------------------------------------------------------------------

std::string short_hash(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(8, '0');
  for (int i = 0; i < 8; ++i) out[i] = digits[(h >> (i * 8)) & 0xf];
  return out;
}

NamedSentence NamedSentence::make(std::string name, Role role, FormulaPtr formula) {
  NamedSentence s;
  s.name = name;
  s.base_name = std::move(name);
  s.role = role;
  s.formula = std::move(formula);
  s.alpha_fp = alpha_fingerprint(s.formula);
  s.base_fp = s.alpha_fp;
  s.skeleton_fp = skeleton_fingerprint(s.formula);
  s.symbols = symbols_of(s.formula);
  return s;
}

NamedSentence map_sentence(const SignatureMorphism& sigma, const NamedSentence& s) {
  if (sigma.fixes(s.symbols)) return s;
  NamedSentence out = s;
  out.formula = apply_morphism(sigma, s.formula);
  out.alpha_fp = alpha_fingerprint(out.formula);
  out.skeleton_fp = s.skeleton_fp;  // renamings preserve the skeleton
  out.symbols = map_symbols(sigma, s.symbols);
  out.name = out.alpha_fp == s.base_fp ? s.base_name : s.base_name + "@" + short_hash(out.alpha_fp);
  return out;
}

// ---------------------------------------------------------------------------
// Renaming search. A backtracking unifier over symbol names, kind-separated,
// with a reverse map enforcing injectivity.

namespace {

struct Unifier {
  std::map<std::pair<int, std::string>, std::string> fwd;  // (kind, from) -> to
  std::map<std::pair<int, std::string>, std::string> rev;  // (kind, to) -> from
  const SymbolSet* frozen = nullptr;
  std::vector<std::pair<int, std::string>> trail;

  bool is_frozen(SymbolKind k, const std::string& name) const {
    return frozen->count(SymbolDecl{name, 0, k}) > 0;
  }

  size_t mark() const { return trail.size(); }

  void undo(size_t m) {
    while (trail.size() > m) {
      auto key = trail.back();
      trail.pop_back();
      auto it = fwd.find(key);
      rev.erase({key.first, it->second});
      fwd.erase(it);
    }
  }

  bool bind(SymbolKind k, const std::string& from, const std::string& to) {
    int kk = static_cast<int>(k);
    if (is_frozen(k, from)) return from == to;
    auto key = std::make_pair(kk, from);
    auto it = fwd.find(key);
    if (it != fwd.end()) return it->second == to;
    auto rkey = std::make_pair(kk, to);
    auto rit = rev.find(rkey);
    if (rit != rev.end()) return false;  // injectivity
    // A frozen symbol occupies its own name: nothing else may map onto it.
    if (is_frozen(k, to) && from != to) return false;
    fwd.emplace(key, to);
    rev.emplace(rkey, from);
    trail.push_back(key);
    return true;
  }

  bool unify_term(const TermPtr& a, const Env& ea, const TermPtr& b, const Env& eb) {
    if (a->kind != b->kind) return false;
    if (a->kind == Term::Kind::Variable) {
      auto la = level_of(ea, a->name), lb = level_of(eb, b->name);
      return la.has_value() && lb.has_value() && *la == *lb;
    }
    if (a->args.size() != b->args.size()) return false;
    if (!bind(SymbolKind::Function, a->name, b->name)) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!unify_term(a->args[i], ea, b->args[i], eb)) return false;
    return true;
  }

  bool unify(const FormulaPtr& a, Env& ea, const FormulaPtr& b, Env& eb) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        if (a->binders.size() != b->binders.size()) return false;
        for (const auto& v : a->binders) ea.push_back(v);
        for (const auto& v : b->binders) eb.push_back(v);
        bool ok = unify(a->left, ea, b->left, eb);
        ea.resize(ea.size() - a->binders.size());
        eb.resize(eb.size() - b->binders.size());
        return ok;
      }
      case Formula::Kind::Not:
        return unify(a->left, ea, b->left, eb);
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
      case Formula::Kind::Iff:
        return unify(a->left, ea, b->left, eb) && unify(a->right, ea, b->right, eb);
      case Formula::Kind::Equal: {
        return unify_term(a->args[0], ea, b->args[0], eb) && unify_term(a->args[1], ea, b->args[1], eb);
      }
      case Formula::Kind::Atom: {
        if (a->args.size() != b->args.size()) return false;
        if (!bind(SymbolKind::Predicate, a->pred, b->pred)) return false;
        for (size_t i = 0; i < a->args.size(); ++i)
          if (!unify_term(a->args[i], ea, b->args[i], eb)) return false;
        return true;
      }
    }
    return false;
  }

  SignatureMorphism morphism() const {
    SignatureMorphism m;
    for (const auto& [key, to] : fwd)
      m.add(key.first == static_cast<int>(SymbolKind::Function) ? SymbolKind::Function : SymbolKind::Predicate,
            key.second, to);
    return m;
  }
};

std::optional<RenamingResult> search(const std::vector<NamedSentence>& source,
                                     const std::vector<NamedSentence>& target,
                                     const SymbolSet& frozen, const SignatureMorphism& preset,
                                     const RenamingFilter& accept, bool bijective) {
  if (bijective && source.size() != target.size()) return std::nullopt;
  if (source.size() > target.size()) return std::nullopt;

  // Frozen entries are identities; ignore arities when looking symbols up.
  SymbolSet frozen_names;
  for (const auto& s : frozen) frozen_names.insert(SymbolDecl{s.name, 0, s.kind});

  Unifier u;
  u.frozen = &frozen_names;
  for (const auto& [k, v] : preset.functions())
    if (!u.bind(SymbolKind::Function, k, v)) return std::nullopt;
  for (const auto& [k, v] : preset.predicates())
    if (!u.bind(SymbolKind::Predicate, k, v)) return std::nullopt;

  // Sources ordered by structural fingerprint to prune, ties by input order.
  std::vector<size_t> order(source.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return source[a].skeleton_fp < source[b].skeleton_fp;
  });

  std::vector<int> chosen(source.size(), -1);
  std::vector<bool> taken(target.size(), false);
  std::optional<RenamingResult> found;

  std::function<bool(size_t)> step = [&](size_t k) -> bool {
    if (k == order.size()) {
      RenamingResult r;
      r.morphism = u.morphism();
      for (size_t i = 0; i < source.size(); ++i) r.correspondence[source[i].name] = target[chosen[i]].name;
      if (accept && !accept(r.morphism, r.correspondence)) return false;
      found = std::move(r);
      return true;
    }
    size_t si = order[k];
    const auto& s = source[si];
    for (size_t ti = 0; ti < target.size(); ++ti) {
      if (taken[ti]) continue;
      const auto& t = target[ti];
      if (t.role != s.role || t.skeleton_fp != s.skeleton_fp) continue;
      size_t m = u.mark();
      Env ea, eb;
      if (u.unify(s.formula, ea, t.formula, eb)) {
        taken[ti] = true;
        chosen[si] = static_cast<int>(ti);
        if (step(k + 1)) return true;
        taken[ti] = false;
        chosen[si] = -1;
      }
      u.undo(m);
    }
    return false;
  };

  step(0);
  return found;
}

}  // namespace

std::optional<RenamingResult> find_renaming(const std::vector<NamedSentence>& source,
                                            const std::vector<NamedSentence>& target,
                                            const SymbolSet& frozen) {
  return search(source, target, frozen, SignatureMorphism::identity(), nullptr, true);
}

std::optional<RenamingResult> find_renaming_constrained(
    const std::vector<NamedSentence>& source, const std::vector<NamedSentence>& target,
    const SymbolSet& frozen, const SignatureMorphism& preset, const RenamingFilter& accept) {
  return search(source, target, frozen, preset, accept, true);
}

std::optional<RenamingResult> find_embedding(const std::vector<NamedSentence>& source,
                                             const std::vector<NamedSentence>& target,
                                             const SymbolSet& frozen,
                                             const SignatureMorphism& preset,
                                             const RenamingFilter& accept) {
  return search(source, target, frozen, preset, accept, false);
}

}  // namespace theoryforge::fol
