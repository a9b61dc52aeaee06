#include "theoryforge/tactics.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace theoryforge::tactics {

using dg::Analysis;
using dg::Domain;
using dg::Entity;
using dg::EntityKey;
using dg::Link;
using dg::Node;
using dg::NodeId;
using dg::Structuring;
using fol::NamedSentence;
using fol::SignatureMorphism;
using fol::SymbolDecl;
using fol::SymbolKind;
using fol::SymbolSet;
using rules::FactorizationCandidate;
using rules::ImportSpec;
using rules::LocalContent;

// ---------------------------------------------------------------------------

std::vector<std::vector<EntityKey>> DependencyGraph::components() const {
  std::map<EntityKey, std::set<EntityKey>> adj;
  for (const auto& v : vertices) adj[v];
  for (const auto& [from, tos] : uses) {
    for (const auto& to : tos) {
      adj[from].insert(to);
      adj[to].insert(from);
    }
  }
  std::vector<std::vector<EntityKey>> out;
  std::set<EntityKey> seen;
  for (const auto& v : vertices) {
    if (seen.count(v)) continue;
    std::vector<EntityKey> comp;
    std::vector<EntityKey> queue{v};
    seen.insert(v);
    while (!queue.empty()) {
      EntityKey cur = queue.back();
      queue.pop_back();
      comp.push_back(cur);
      for (const auto& nb : adj[cur]) {
        if (seen.insert(nb).second) queue.push_back(nb);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::set<EntityKey> DependencyGraph::minimal() const {
  std::set<EntityKey> out;
  for (const auto& v : vertices) {
    auto it = uses.find(v);
    if (it == uses.end() || it->second.empty()) out.insert(v);
  }
  return out;
}

std::set<EntityKey> DependencyGraph::maximal() const {
  std::set<EntityKey> used;
  for (const auto& [from, tos] : uses) used.insert(tos.begin(), tos.end());
  std::set<EntityKey> out;
  for (const auto& v : vertices)
    if (!used.count(v)) out.insert(v);
  return out;
}

DependencyGraph dependency_graph(const Structuring& s, const NodeId& node) {
  auto it = s.graph.nodes.find(node);
  if (it == s.graph.nodes.end()) throw dg::UnknownNodeError(node);
  const Node& n = it->second;

  DependencyGraph g;
  std::map<std::string, EntityKey> sentence_names;
  Domain local = Analysis::local_domain(n);
  for (const auto& e : local.entities()) g.vertices.push_back(e.key());
  std::sort(g.vertices.begin(), g.vertices.end());
  for (const auto& [fp, se] : local.axioms)
    for (const auto& nm : se.names) sentence_names[nm] = Entity::of(se.sentence).key();
  for (const auto& [fp, se] : local.lemmas)
    for (const auto& nm : se.names) sentence_names[nm] = Entity::of(se.sentence).key();

  auto add_sentence = [&](const NamedSentence& x) {
    EntityKey k = Entity::of(x).key();
    for (const auto& sym : x.symbols) {
      if (n.sig.count(sym))
        g.uses[k].insert(Entity::of(sym).key());
      else
        g.external[k].insert("sym:" + sym.name);
    }
    if (x.role == fol::Role::Lemma) {
      for (const auto& ref : s.supp.supports_of(x.name)) {
        auto st = sentence_names.find(ref);
        if (st != sentence_names.end())
          g.uses[k].insert(st->second);
        else
          g.external[k].insert("supp:" + ref);
      }
    }
  };
  for (const auto& x : n.axioms) add_sentence(x);
  for (const auto& x : n.lemmas) add_sentence(x);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<NodeId> node_order(const Structuring& s) {
  Analysis a(s.graph);
  return a.topo_order();
}

LocalContent content_from_keys(const Node& n, const std::set<EntityKey>& keys) {
  LocalContent c;
  for (const auto& d : n.sig)
    if (keys.count(Entity::of(d).key())) c.sig.insert(d);
  for (const auto& x : n.axioms)
    if (keys.count(Entity::of(x).key())) c.axioms.push_back(x);
  for (const auto& x : n.lemmas)
    if (keys.count(Entity::of(x).key())) c.lemmas.push_back(x);
  return c;
}

std::map<EntityKey, std::string> display_names(const Node& n) {
  std::map<EntityKey, std::string> out;
  for (const auto& d : n.sig) out.emplace(Entity::of(d).key(), d.name);
  auto take = [&](const std::vector<NamedSentence>& side) {
    for (const auto& x : side) {
      auto [it, fresh] = out.emplace(Entity::of(x).key(), x.name);
      if (!fresh && x.name < it->second) it->second = x.name;
    }
  };
  take(n.axioms);
  take(n.lemmas);
  return out;
}

// loc^-1(N) == dom^N, the horizontal-split gate.
bool nothing_imported_located_at(const Structuring& s, const NodeId& node) {
  std::set<EntityKey> local;
  for (const auto& e : Analysis::local_domain(s.graph.nodes.at(node)).entities())
    local.insert(e.key());
  for (const auto& [k, at] : s.loc.at) {
    if (at == node && !local.count(k)) return false;
  }
  return true;
}

}  // namespace

std::optional<StepResult> split_horizontal(const Structuring& s) {
  for (const auto& nid : node_order(s)) {
    const Node& n = s.graph.nodes.at(nid);
    if (!nothing_imported_located_at(s, nid)) continue;
    DependencyGraph dep = dependency_graph(s, nid);
    auto comps = dep.components();
    if (comps.size() < 2) continue;

    auto names = display_names(n);
    auto smallest_name = [&](const std::vector<EntityKey>& comp) {
      std::string best;
      for (const auto& k : comp) {
        const std::string& nm = names.at(k);
        if (best.empty() || nm < best) best = nm;
      }
      return best;
    };
    size_t pick = 0;
    for (size_t i = 1; i < comps.size(); ++i) {
      if (comps[i].size() > comps[pick].size() ||
          (comps[i].size() == comps[pick].size() &&
           smallest_name(comps[i]) < smallest_name(comps[pick])))
        pick = i;
    }
    std::set<EntityKey> largest(comps[pick].begin(), comps[pick].end());
    std::set<EntityKey> rest;
    for (size_t i = 0; i < comps.size(); ++i) {
      if (i == pick) continue;
      rest.insert(comps[i].begin(), comps[i].end());
    }
    try {
      Structuring out = rules::horizontal_split(
          s, nid, {content_from_keys(n, largest), content_from_keys(n, rest)});
      return StepResult{std::move(out), "SplitHorizontal(" + nid + ")"};
    } catch (const rules::PreconditionError&) {
      continue;
    }
  }
  return std::nullopt;
}

namespace {

std::optional<StepResult> split_vertical(const Structuring& s, bool maximal_variant) {
  for (const auto& nid : node_order(s)) {
    const Node& n = s.graph.nodes.at(nid);
    DependencyGraph dep = dependency_graph(s, nid);
    if (dep.vertices.empty()) continue;
    std::set<EntityKey> chosen = maximal_variant ? dep.maximal() : dep.minimal();
    if (chosen.empty() || chosen.size() >= dep.vertices.size()) continue;
    std::set<EntityKey> rest;
    for (const auto& v : dep.vertices)
      if (!chosen.count(v)) rest.insert(v);

    LocalContent upper = content_from_keys(n, maximal_variant ? chosen : rest);
    LocalContent lower = content_from_keys(n, maximal_variant ? rest : chosen);
    if (!rules::lemma_independent(s, nid, lower)) continue;
    try {
      Structuring out = rules::vertical_split(s, nid, lower, upper);
      const char* name = maximal_variant ? "SplitVerticallyMaximal" : "SplitVerticallyMinimal";
      return StepResult{std::move(out), std::string(name) + "(" + nid + ")"};
    } catch (const rules::PreconditionError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<StepResult> split_vertical_maximal(const Structuring& s) {
  return split_vertical(s, true);
}

std::optional<StepResult> split_vertical_minimal(const Structuring& s) {
  return split_vertical(s, false);
}

// ---------------------------------------------------------------------------
// Factorization candidate search.

namespace {

// Content profile for quick family grouping: per-(kind, arity) symbol counts
// plus the sentence skeleton multiset.
std::string node_profile(const Node& n) {
  std::map<std::pair<int, int>, int> sig_counts;
  for (const auto& d : n.sig) sig_counts[{static_cast<int>(d.kind), d.arity}]++;
  std::vector<std::string> skels;
  for (const auto& x : n.axioms) skels.push_back("a:" + x.skeleton_fp);
  for (const auto& x : n.lemmas) skels.push_back("l:" + x.skeleton_fp);
  std::sort(skels.begin(), skels.end());
  std::ostringstream os;
  for (const auto& [ka, c] : sig_counts) os << ka.first << "/" << ka.second << "x" << c << ";";
  for (const auto& sk : skels) os << sk << "|";
  return os.str();
}

std::vector<NamedSentence> node_sentences(const Node& n) {
  std::vector<NamedSentence> out = n.axioms;
  out.insert(out.end(), n.lemmas.begin(), n.lemmas.end());
  return out;
}

struct SharedImport {
  NodeId source;
  std::map<NodeId, const Link*> designated;  // member -> first link by id
};

// Sources with at least one link into every listed node; the designated link
// per member is the one with the smallest id.
std::vector<SharedImport> shared_imports(const Structuring& s, const std::vector<NodeId>& members) {
  std::map<NodeId, std::map<NodeId, const Link*>> by_source;
  for (const auto& l : s.graph.links) {
    if (std::find(members.begin(), members.end(), l.target) == members.end()) continue;
    auto& slot = by_source[l.source][l.target];
    if (!slot || l.id < slot->id) slot = &l;
  }
  std::vector<SharedImport> out;
  for (const auto& [src, per_member] : by_source) {
    if (per_member.size() != members.size()) continue;
    if (std::find(members.begin(), members.end(), src) != members.end()) continue;
    SharedImport si;
    si.source = src;
    si.designated = per_member;
    out.push_back(std::move(si));
  }
  return out;
}

// The renaming between two members is pinned on import-provided symbols:
// sigma_{i,pivot}(e) must map to sigma_{i,other}(e). When several imports
// provide the same pivot-side symbol, the first one in import order claims it
// (the factor pulls the symbol back into that import's coordinates; later
// claims are then irrelevant). Identity claims become frozen symbols.
struct PresetPins {
  SignatureMorphism preset;
  SymbolSet frozen;
};

PresetPins import_pins(const Analysis& a, const std::vector<SharedImport>& imports,
                       const NodeId& pivot, const NodeId& other) {
  PresetPins pins;
  std::set<std::pair<int, std::string>> seen;
  for (const auto& imp : imports) {
    const auto& mp = imp.designated.at(pivot)->morphism;
    const auto& mo = imp.designated.at(other)->morphism;
    for (const auto& d : a.domain(imp.source).sig) {
      std::string from = mp.apply(d.kind, d.name);
      std::string to = mo.apply(d.kind, d.name);
      if (!seen.insert({static_cast<int>(d.kind), from}).second) continue;
      if (from == to)
        pins.frozen.insert(SymbolDecl{from, d.arity, d.kind});
      else
        pins.preset.add(d.kind, from, to);
    }
  }
  return pins;
}

// Support-respect: lemmas correspond only when their supports correspond
// under the same renaming: local supports through the sentence
// correspondence, import-provided supports through the shared-import link
// morphisms, anything fixed by plain name equality.
bool supports_respected(const Structuring& s, const Analysis& a,
                        const std::vector<SharedImport>& imports, const NodeId& pivot,
                        const NodeId& other, const std::map<std::string, std::string>& corr) {
  const Domain& dp = a.domain(pivot);
  const Domain& dom_other = a.domain(other);
  const Node& np = s.graph.nodes.at(pivot);

  std::set<std::string> pivot_local_names;
  for (const auto& x : node_sentences(np)) pivot_local_names.insert(x.name);

  for (const auto& x : np.lemmas) {
    auto refs = s.supp.supports_of(x.name);
    auto oit = corr.find(x.name);
    if (oit == corr.end()) return false;
    auto orefs = s.supp.supports_of(oit->second);
    if (refs.size() != orefs.size()) return false;
    for (const auto& ref : refs) {
      if (pivot_local_names.count(ref)) {
        auto rit = corr.find(ref);
        if (rit == corr.end() || !orefs.count(rit->second)) return false;
        continue;
      }
      auto ent = dp.find_name(ref);
      if (!ent) return false;
      // Find a shared-import preimage and push it through the other side.
      bool matched = false;
      for (const auto& imp : imports) {
        const auto& mp = imp.designated.at(pivot)->morphism;
        const auto& mo = imp.designated.at(other)->morphism;
        for (const auto& e : a.domain(imp.source).entities()) {
          if (e.kind != Entity::Kind::Sentence) continue;
          if (!(map_entity(mp, e).key() == ent->key())) continue;
          EntityKey want = map_entity(mo, e).key();
          for (const auto& oref : orefs) {
            auto oent = dom_other.find_name(oref);
            if (oent && oent->key() == want) {
              matched = true;
              break;
            }
          }
          if (matched) break;
        }
        if (matched) break;
      }
      if (!matched) {
        // Fall back to an entity fixed across both members.
        auto oent = dom_other.find_name(ref);
        if (!(oent && orefs.count(ref) && oent->key() == ent->key())) return false;
      }
    }
  }
  return true;
}

// Pair up symbols that occur in no sentence, per (kind, arity), in name
// order; extends sigma and the reverse map. Returns false on mismatch.
bool pair_unused_symbols(const SymbolSet& from, const SymbolSet& to, SignatureMorphism& sigma) {
  std::map<std::pair<int, int>, std::vector<std::string>> f, t;
  std::set<std::pair<int, std::string>> images;
  for (const auto& [k, v] : sigma.functions()) images.insert({0, v});
  for (const auto& [k, v] : sigma.predicates()) images.insert({1, v});

  for (const auto& d : from) f[{static_cast<int>(d.kind), d.arity}].push_back(d.name);
  for (const auto& d : to) t[{static_cast<int>(d.kind), d.arity}].push_back(d.name);
  if (f.size() != t.size()) return false;
  for (auto& [ka, names] : f) {
    auto it = t.find(ka);
    if (it == t.end() || it->second.size() != names.size()) return false;
    for (size_t i = 0; i < names.size(); ++i) {
      SymbolKind kind = ka.first == 0 ? SymbolKind::Function : SymbolKind::Predicate;
      int tag = kind == SymbolKind::Function ? 0 : 1;
      if (!images.insert({tag, it->second[i]}).second) return false;
      sigma.add(kind, names[i], it->second[i]);
    }
  }
  return true;
}

// Full-node match of `other` against `pivot`: renaming + correspondence on
// sentences plus a total local-signature pairing.
std::optional<SignatureMorphism> match_member(const Structuring& s, const Analysis& a,
                                              const std::vector<SharedImport>& imports,
                                              const NodeId& pivot, const NodeId& other,
                                              bool pull_symbols,
                                              std::map<std::string, std::string>* corr_out) {
  const Node& np = s.graph.nodes.at(pivot);
  const Node& no = s.graph.nodes.at(other);
  PresetPins pins;
  if (pull_symbols) pins = import_pins(a, imports, pivot, other);

  auto accept = [&](const SignatureMorphism& m, const std::map<std::string, std::string>& corr) {
    (void)m;
    return supports_respected(s, a, imports, pivot, other, corr);
  };
  auto res = fol::find_renaming_constrained(node_sentences(np), node_sentences(no), pins.frozen,
                                            pins.preset, accept);
  if (!res) return std::nullopt;

  SignatureMorphism sigma = res->morphism;
  // Local signatures must correspond totally; symbols already pinned by the
  // formula match keep their images, unused ones pair by (kind, arity).
  SymbolSet unmatched_from, unmatched_to;
  SymbolSet to_local_mapped;
  for (const auto& d : np.sig) {
    SymbolDecl img = sigma.apply(d);
    if (no.sig.count(img))
      to_local_mapped.insert(img);
    else if (img.name != d.name || pins.preset.apply(d.kind, d.name) != d.name)
      return std::nullopt;  // pinned image escapes the other node's local sig
    else
      unmatched_from.insert(d);
  }
  for (const auto& d : no.sig)
    if (!to_local_mapped.count(d)) unmatched_to.insert(d);
  if (!pair_unused_symbols(unmatched_from, unmatched_to, sigma)) return std::nullopt;

  if (corr_out) *corr_out = res->correspondence;
  return sigma;
}

std::string fresh_symbol_name(const Structuring& s, const Analysis& a, const std::string& base,
                              std::set<std::string>& used) {
  for (int k = 1;; ++k) {
    std::string name = base + "_" + std::to_string(k);
    if (used.count(name)) continue;
    bool clash = false;
    for (const auto& d : a.whole().sig) {
      if (d.name == name) {
        clash = true;
        break;
      }
    }
    if (!clash && !a.whole().find_name(name)) {
      used.insert(name);
      return name;
    }
    (void)s;
  }
}

std::optional<FactorizationCandidate> build_candidate(const Structuring& s, const Analysis& a,
                                                      const std::vector<NodeId>& members,
                                                      const std::vector<SignatureMorphism>& sigmas,
                                                      const std::vector<std::map<std::string, std::string>>& corrs,
                                                      const std::vector<SharedImport>& imports,
                                                      bool pull_symbols) {
  const NodeId& pivot = members[0];
  const Node& np = s.graph.nodes.at(pivot);

  // Symbols reachable through the shared imports, in source coordinates (the
  // factor imports them with sigma_i = id). pivot-side name -> source name.
  // Without pull-back every occurring symbol is generalized into the factor
  // and the imports only carry support entities.
  std::map<std::pair<int, std::string>, std::string> import_world;
  if (pull_symbols) {
    for (const auto& imp : imports) {
      const auto& mp = imp.designated.at(pivot)->morphism;
      for (const auto& d : a.domain(imp.source).sig) {
        import_world.emplace(std::make_pair(static_cast<int>(d.kind), mp.apply(d.kind, d.name)),
                             d.name);
      }
    }
  }

  // rho renames pivot-local and non-shared imported symbols to fresh names
  // and pulls shared-import symbols back to source coordinates.
  std::string tag = [&] {
    std::string ids;
    for (const auto& m : members) ids += m + ";";
    return fol::short_hash(ids);
  }();
  std::set<std::string> used;
  SignatureMorphism rho;
  FactorizationCandidate cand;
  std::vector<SignatureMorphism> thetas(members.size());

  SymbolSet occurring;
  for (const auto& x : node_sentences(np)) fol::merge_symbols(occurring, x.symbols);
  SymbolSet pivot_world = occurring;
  for (const auto& d : np.sig) pivot_world.insert(d);

  for (const auto& d : pivot_world) {
    auto iw = import_world.find({static_cast<int>(d.kind), d.name});
    if (iw != import_world.end()) {
      if (iw->second != d.name) rho.add(d.kind, d.name, iw->second);
      continue;  // provided by a shared import, not factor-local
    }
    std::string fresh = fresh_symbol_name(s, a, "gen_" + tag, used);
    rho.add(d.kind, d.name, fresh);
    cand.content.sig.insert(SymbolDecl{fresh, d.arity, d.kind});
    for (size_t j = 0; j < members.size(); ++j)
      thetas[j].add(d.kind, fresh, sigmas[j].apply(d.kind, d.name));
  }

  // Shared-import symbols: theta_j must agree with the designated links.
  for (const auto& imp : imports) {
    for (const auto& d : a.domain(imp.source).sig) {
      for (size_t j = 0; j < members.size(); ++j) {
        const auto& mj = imp.designated.at(members[j])->morphism;
        std::string want = mj.apply(d.kind, d.name);
        std::string have = thetas[j].apply(d.kind, d.name);
        if (have != d.name && have != want) return std::nullopt;  // conflicting imports
        thetas[j].add(d.kind, d.name, want);
      }
    }
  }

  // Fresh content sentences and the factor-side support mapping.
  std::map<std::string, std::string> fresh_name_of;  // pivot sentence -> factor name
  auto freshen = [&](const NamedSentence& x) {
    std::string name = fresh_symbol_name(s, a, "gen_" + tag, used);
    fresh_name_of[x.name] = name;
    return NamedSentence::make(name, x.role, fol::apply_morphism(rho, x.formula));
  };
  for (const auto& x : np.axioms) cand.content.axioms.push_back(freshen(x));
  for (const auto& x : np.lemmas) cand.content.lemmas.push_back(freshen(x));

  const Domain& dp = a.domain(pivot);
  for (const auto& x : np.lemmas) {
    std::set<std::string> refs;
    for (const auto& ref : s.supp.supports_of(x.name)) {
      auto fit = fresh_name_of.find(ref);
      if (fit != fresh_name_of.end()) {
        refs.insert(fit->second);
        continue;
      }
      // Resolve through a shared import back to source coordinates.
      auto ent = dp.find_name(ref);
      if (!ent) return std::nullopt;
      bool resolved = false;
      for (const auto& imp : imports) {
        const auto& mp = imp.designated.at(pivot)->morphism;
        for (const auto& e : a.domain(imp.source).entities()) {
          if (e.kind != Entity::Kind::Sentence) continue;
          if (map_entity(mp, e).key() == ent->key()) {
            refs.insert(e.sentence.name);
            resolved = true;
            break;
          }
        }
        if (resolved) break;
      }
      if (!resolved) return std::nullopt;  // support not coverable at the factor
    }
    if (!refs.empty()) cand.factor_support.entries[fresh_name_of[x.name]] = std::move(refs);
  }

  cand.members = members;
  cand.instance_morphisms = std::move(thetas);
  for (const auto& imp : imports) {
    ImportSpec spec;
    spec.source = imp.source;
    spec.sigma = SignatureMorphism::identity();
    for (const auto& [mid, link] : imp.designated) spec.member_links[mid] = link->id;
    cand.imports.push_back(std::move(spec));
  }
  (void)corrs;
  return cand;
}

// The smallest prefix of the shared imports that makes every non-local
// support reference of the pivot's lemmas resolvable at the factor. Fails
// when some support is not coverable at all.
std::optional<std::vector<SharedImport>> support_cover(const Structuring& s, const Analysis& a,
                                                       const std::vector<SharedImport>& all,
                                                       const NodeId& pivot) {
  const Node& np = s.graph.nodes.at(pivot);
  const Domain& dp = a.domain(pivot);
  std::set<std::string> local_names;
  for (const auto& x : node_sentences(np)) local_names.insert(x.name);

  std::vector<SharedImport> chosen;
  std::set<NodeId> chosen_ids;
  for (const auto& x : np.lemmas) {
    for (const auto& ref : s.supp.supports_of(x.name)) {
      if (local_names.count(ref)) continue;
      auto ent = dp.find_name(ref);
      if (!ent) return std::nullopt;
      bool covered = false;
      for (const auto& imp : all) {
        const auto& mp = imp.designated.at(pivot)->morphism;
        for (const auto& e : a.domain(imp.source).entities()) {
          if (e.kind != Entity::Kind::Sentence) continue;
          if (map_entity(mp, e).key() == ent->key()) {
            covered = true;
            if (chosen_ids.insert(imp.source).second) chosen.push_back(imp);
            break;
          }
        }
        if (covered) break;
      }
      if (!covered) return std::nullopt;
    }
  }
  return chosen;
}

std::optional<std::pair<FactorizationCandidate, Structuring>> try_full_family(
    const Structuring& s) {
  Analysis a(s.graph);
  const auto& order = a.topo_order();

  std::map<NodeId, std::string> profiles;
  for (const auto& nid : order) profiles[nid] = node_profile(s.graph.nodes.at(nid));

  for (size_t pi = 0; pi < order.size(); ++pi) {
    const NodeId& pivot = order[pi];
    if (s.graph.nodes.at(pivot).empty()) continue;
    std::vector<NodeId> family0{pivot};
    for (size_t oi = pi + 1; oi < order.size(); ++oi) {
      if (profiles[order[oi]] == profiles[pivot]) family0.push_back(order[oi]);
    }
    if (family0.size() < 2) continue;

    // Three import policies: all shared imports with symbol pull-back (the
    // frozen-symbol heuristic), the minimal support-covering subset with
    // pull-back, and finally the covering subset with every occurring symbol
    // generalized into the factor.
    for (int mode = 0; mode < 3; ++mode) {
      bool pull_symbols = mode < 2;
      std::vector<NodeId> family = family0;
      // Trim to the members that actually match the pivot under the chosen
      // imports; shrink and retry when some fail.
      while (family.size() >= 2) {
        auto all = shared_imports(s, family);
        std::vector<SharedImport> imports;
        if (mode == 0) {
          imports = all;
        } else {
          auto cover = support_cover(s, a, all, pivot);
          if (std::getenv("TF_DEBUG"))
            fprintf(stderr, "[tf] mode %d pivot %s: shared=%zu cover=%s\n", mode, pivot.c_str(),
                    all.size(), cover ? std::to_string(cover->size()).c_str() : "none");
          if (!cover) break;                                   // infeasible
          if (mode == 1 && cover->size() == all.size()) break; // same as mode 0
          imports = std::move(*cover);
        }
        std::vector<NodeId> members{pivot};
        std::vector<SignatureMorphism> sigmas{SignatureMorphism::identity()};
        std::vector<std::map<std::string, std::string>> corrs;
        {
          std::map<std::string, std::string> idc;
          for (const auto& x : node_sentences(s.graph.nodes.at(pivot))) idc[x.name] = x.name;
          corrs.push_back(std::move(idc));
        }
        for (size_t k = 1; k < family.size(); ++k) {
          std::map<std::string, std::string> corr;
          auto sigma = match_member(s, a, imports, pivot, family[k], pull_symbols, &corr);
          if (sigma) {
            members.push_back(family[k]);
            sigmas.push_back(std::move(*sigma));
            corrs.push_back(std::move(corr));
          } else if (std::getenv("TF_DEBUG")) {
            fprintf(stderr, "[tf] mode %d: %s does not match pivot %s (%zu imports)\n", mode,
                    family[k].c_str(), pivot.c_str(), imports.size());
          }
        }
        if (members.size() < 2) break;
        if (members.size() != family.size()) {
          family = members;  // recompute shared imports for the smaller family
          continue;
        }
        auto cand = build_candidate(s, a, members, sigmas, corrs, imports, pull_symbols);
        if (!cand) {
          if (std::getenv("TF_DEBUG"))
            fprintf(stderr, "[tf] mode %d: candidate build failed for pivot %s\n", mode, pivot.c_str());
          break;
        }
        try {
          Structuring out = rules::factorize(s, *cand);
          return std::make_pair(std::move(*cand), std::move(out));
        } catch (const rules::PreconditionError& e) {
          if (std::getenv("TF_DEBUG")) {
            fprintf(stderr, "[tf] mode %d: factorize refused for pivot %s: %s\n", mode, pivot.c_str(),
                    e.what());
            for (const auto& d : cand->content.sig)
              fprintf(stderr, "[tf]   content sym %s\n", to_string(d).c_str());
            for (const auto& x : cand->content.axioms)
              fprintf(stderr, "[tf]   content ax %s: %s\n", x.name.c_str(), x.alpha_fp.c_str());
            for (const auto& x : cand->content.lemmas)
              fprintf(stderr, "[tf]   content lem %s: %s\n", x.name.c_str(), x.alpha_fp.c_str());
          }
          break;
        }
      }
    }
  }
  return std::nullopt;
}

// Partial match: the pivot's entire content embeds into a proper subset of
// another node; isolate that subset by a split, then factorize.
std::optional<Structuring> try_partial(const Structuring& s) {
  Analysis a(s.graph);
  const auto& order = a.topo_order();
  for (const auto& pivot : order) {
    const Node& np = s.graph.nodes.at(pivot);
    if (np.empty()) continue;
    for (const auto& other : order) {
      if (other == pivot) continue;
      const Node& no = s.graph.nodes.at(other);
      if (node_sentences(no).size() <= node_sentences(np).size()) continue;

      auto imports = shared_imports(s, {pivot, other});
      PresetPins pins = import_pins(a, imports, pivot, other);
      auto accept = [&](const SignatureMorphism& m, const std::map<std::string, std::string>& corr) {
        (void)m;
        return supports_respected(s, a, imports, pivot, other, corr);
      };
      auto emb = fol::find_embedding(node_sentences(np), node_sentences(no), pins.frozen,
                                     pins.preset, accept);
      if (!emb) continue;

      // The isolated part: matched sentences plus the images of the pivot's
      // local symbols.
      std::set<EntityKey> subset;
      std::set<std::string> image_names;
      for (const auto& [from, to] : emb->correspondence) image_names.insert(to);
      for (const auto& x : node_sentences(no))
        if (image_names.count(x.name)) subset.insert(Entity::of(x).key());
      for (const auto& d : np.sig) {
        SymbolDecl img = emb->morphism.apply(d);
        if (no.sig.count(img)) subset.insert(Entity::of(img).key());
      }
      std::set<EntityKey> rest;
      for (const auto& e : Analysis::local_domain(no).entities())
        if (!subset.count(e.key())) rest.insert(e.key());
      if (rest.empty() || subset.empty()) continue;

      LocalContent part = content_from_keys(no, subset);
      LocalContent residue = content_from_keys(no, rest);

      auto after_split = [&](const Structuring& split) -> std::optional<Structuring> {
        if (auto full = try_full_family(split)) return std::move(full->second);
        return std::nullopt;
      };
      try {
        if (auto r = after_split(rules::horizontal_split(s, other, {part, residue}))) return r;
      } catch (const rules::PreconditionError&) {
      }
      try {
        if (auto r = after_split(rules::vertical_split(s, other, residue, part))) return r;
      } catch (const rules::PreconditionError&) {
      }
      try {
        if (auto r = after_split(rules::vertical_split(s, other, part, residue))) return r;
      } catch (const rules::PreconditionError&) {
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FactorizationCandidate> find_factorization_candidate(const Structuring& s) {
  if (auto full = try_full_family(s)) return std::move(full->first);
  return std::nullopt;
}

std::optional<StepResult> factorize_step(const Structuring& s) {
  if (auto full = try_full_family(s)) {
    std::string note = "Factorize[";
    for (size_t i = 0; i < full->first.members.size(); ++i) {
      if (i) note += ",";
      note += full->first.members[i];
    }
    note += "]";
    return StepResult{std::move(full->second), std::move(note)};
  }
  if (auto partial = try_partial(s)) {
    return StepResult{std::move(*partial), "Factorize[partial]"};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<StepResult> cleanup(const Structuring& s) {
  Structuring cur = s;
  int removed = 0, merged = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    // Removable links first, recomputing after each removal. Links into
    // topologically shallow targets go first, so redundant shortcuts into
    // shared base theories die before the deep per-theory chains that keep
    // knowledge next to its users.
    std::map<NodeId, int> depth;
    {
      Analysis a(cur.graph);
      for (const auto& nid : a.topo_order()) {
        int d = 0;
        for (const auto* l : cur.graph.links_into(nid))
          if (depth.count(l->source)) d = std::max(d, depth[l->source] + 1);
        depth[nid] = d;
      }
    }
    std::vector<std::tuple<int, NodeId, NodeId, int>> ids;
    for (const auto& l : cur.graph.links)
      ids.emplace_back(depth.count(l.target) ? depth[l.target] : 0, l.source, l.target, l.id);
    std::sort(ids.begin(), ids.end());
    {
      Analysis before(cur.graph);
      int pick = -1;
      for (const auto& [d, src, tgt, id] : ids) {
        if (rules::quick_removable(cur, before, id)) {
          pick = id;
          break;
        }
      }
      if (pick >= 0) {
        cur = rules::remove_link(cur, pick);
        ++removed;
        changed = true;
      }
    }
    if (changed) continue;
    // Then empty nodes with a single identity successor.
    for (const auto& [nid, node] : cur.graph.nodes) {
      if (!node.empty()) continue;
      auto out = cur.graph.links_from(nid);
      if (out.empty()) continue;
      const NodeId& tgt = out[0]->target;
      bool mergeable = true;
      for (const auto* l : out) {
        if (l->target != tgt || !l->morphism.is_identity()) {
          mergeable = false;
          break;
        }
      }
      if (!mergeable) continue;
      try {
        cur = rules::vertical_merge(cur, nid, tgt);
        ++merged;
        changed = true;
        break;
      } catch (const rules::PreconditionError&) {
      }
    }
  }
  if (removed == 0 && merged == 0) return std::nullopt;
  std::ostringstream note;
  note << "Cleanup(removed=" << removed << ",merged=" << merged << ")";
  return StepResult{std::move(cur), note.str()};
}

// ---------------------------------------------------------------------------
// Tactic expressions.

namespace {

TacticPtr mk_basic(TacticExpr::Basic b) {
  auto t = std::make_shared<TacticExpr>();
  t->kind = TacticExpr::Kind::Basic;
  t->basic = b;
  return t;
}

TacticPtr mk_unary(TacticExpr::Kind k, TacticPtr inner) {
  auto t = std::make_shared<TacticExpr>();
  t->kind = k;
  t->left = std::move(inner);
  return t;
}

TacticPtr mk_binary(TacticExpr::Kind k, TacticPtr l, TacticPtr r) {
  auto t = std::make_shared<TacticExpr>();
  t->kind = k;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

struct TacticParser {
  std::string text;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string word() {
    skip();
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("tactic syntax error at offset " + std::to_string(pos) + ": expected " + what);
  }

  TacticPtr expr() {
    TacticPtr lhs = seq();
    for (;;) {
      skip();
      size_t save = pos;
      std::string w = word();
      if (w == "onfail") {
        lhs = mk_binary(TacticExpr::Kind::OnFail, lhs, seq());
      } else {
        pos = save;
        return lhs;
      }
    }
  }

  TacticPtr seq() {
    TacticPtr lhs = postfix();
    while (eat(';')) lhs = mk_binary(TacticExpr::Kind::Seq, lhs, postfix());
    return lhs;
  }

  TacticPtr postfix() {
    TacticPtr t = primary();
    for (;;) {
      if (eat('*'))
        t = mk_unary(TacticExpr::Kind::Star, t);
      else if (eat('+'))
        t = mk_unary(TacticExpr::Kind::Plus, t);
      else
        return t;
    }
  }

  TacticPtr primary() {
    if (eat('(')) {
      TacticPtr t = expr();
      if (!eat(')')) fail("')'");
      return t;
    }
    std::string w = word();
    if (w == "SplitHorizontal" || w == "SplitHorizontally")
      return mk_basic(TacticExpr::Basic::SplitHorizontal);
    if (w == "SplitVerticallyMaximal" || w == "SplitVerticallyMaximalEntries" || w == "SplitVerticalMaximal")
      return mk_basic(TacticExpr::Basic::SplitVerticalMaximal);
    if (w == "SplitVerticallyMinimal" || w == "SplitVerticallyMinimalEntries" || w == "SplitVerticalMinimal")
      return mk_basic(TacticExpr::Basic::SplitVerticalMinimal);
    if (w == "Factorize") return mk_basic(TacticExpr::Basic::Factorize);
    if (w == "Cleanup" || w == "RemoveSuperfluousEmptyTheories")
      return mk_basic(TacticExpr::Basic::Cleanup);
    fail("a tactic name");
  }
};

const char* basic_name(TacticExpr::Basic b) {
  switch (b) {
    case TacticExpr::Basic::SplitHorizontal: return "SplitHorizontal";
    case TacticExpr::Basic::SplitVerticalMaximal: return "SplitVerticallyMaximal";
    case TacticExpr::Basic::SplitVerticalMinimal: return "SplitVerticallyMinimal";
    case TacticExpr::Basic::Factorize: return "Factorize";
    case TacticExpr::Basic::Cleanup: return "Cleanup";
  }
  return "?";
}

}  // namespace

TacticPtr parse_tactic(const std::string& text) {
  TacticParser p{text};
  TacticPtr t = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("end of input");
  return t;
}

std::string to_string(const TacticPtr& t) {
  switch (t->kind) {
    case TacticExpr::Kind::Basic: return basic_name(t->basic);
    case TacticExpr::Kind::Star: return "(" + to_string(t->left) + ")*";
    case TacticExpr::Kind::Plus: return "(" + to_string(t->left) + ")+";
    case TacticExpr::Kind::Seq: return "(" + to_string(t->left) + " ; " + to_string(t->right) + ")";
    case TacticExpr::Kind::OnFail:
      return "(" + to_string(t->left) + " onfail " + to_string(t->right) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Interpreter.

namespace {

struct RunState {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::optional<long> max_steps;
  long steps = 0;
  std::vector<std::string> trace;

  bool exhausted() const {
    if (max_steps && steps >= *max_steps) return true;
    if (deadline && std::chrono::steady_clock::now() >= *deadline) return true;
    return false;
  }
};

struct EvalResult {
  Structuring s;
  Outcome o;
};

std::optional<StepResult> apply_basic(TacticExpr::Basic b, const Structuring& s) {
  switch (b) {
    case TacticExpr::Basic::SplitHorizontal: return split_horizontal(s);
    case TacticExpr::Basic::SplitVerticalMaximal: return split_vertical_maximal(s);
    case TacticExpr::Basic::SplitVerticalMinimal: return split_vertical_minimal(s);
    case TacticExpr::Basic::Factorize: return factorize_step(s);
    case TacticExpr::Basic::Cleanup: return cleanup(s);
  }
  return std::nullopt;
}

EvalResult eval(const TacticExpr& t, Structuring cur, RunState& st) {
  switch (t.kind) {
    case TacticExpr::Kind::Basic: {
      if (st.exhausted()) return {std::move(cur), Outcome::TimedOut};
      ++st.steps;
      auto step = apply_basic(t.basic, cur);
      if (!step) return {std::move(cur), Outcome::Failed};
      st.trace.push_back(step->note);
      return {std::move(step->result), Outcome::Progressed};
    }
    case TacticExpr::Kind::Star: {
      for (;;) {
        EvalResult r = eval(*t.left, cur, st);
        if (r.o == Outcome::TimedOut) return r;
        if (r.o == Outcome::Failed) return {std::move(cur), Outcome::Progressed};
        cur = std::move(r.s);
      }
    }
    case TacticExpr::Kind::Plus: {
      EvalResult first = eval(*t.left, cur, st);
      if (first.o != Outcome::Progressed) return first;
      cur = std::move(first.s);
      for (;;) {
        EvalResult r = eval(*t.left, cur, st);
        if (r.o == Outcome::TimedOut) return r;
        if (r.o == Outcome::Failed) return {std::move(cur), Outcome::Progressed};
        cur = std::move(r.s);
      }
    }
    case TacticExpr::Kind::Seq: {
      EvalResult r1 = eval(*t.left, cur, st);
      if (r1.o == Outcome::TimedOut) return r1;
      if (r1.o == Outcome::Failed) return {std::move(cur), Outcome::Failed};
      EvalResult r2 = eval(*t.right, std::move(r1.s), st);
      if (r2.o == Outcome::TimedOut) return r2;
      if (r2.o == Outcome::Failed) {
        st.trace.push_back("(seq rolled back)");
        return {std::move(cur), Outcome::Failed};
      }
      return r2;
    }
    case TacticExpr::Kind::OnFail: {
      EvalResult r1 = eval(*t.left, cur, st);
      if (r1.o == Outcome::Failed) return eval(*t.right, std::move(cur), st);
      return r1;
    }
  }
  return {std::move(cur), Outcome::Failed};
}

}  // namespace

RunResult run_tactic(const TacticPtr& t, const Structuring& s, const Budget& b) {
  RunState st;
  if (b.wall_seconds)
    st.deadline = std::chrono::steady_clock::now() +
                  std::chrono::microseconds(static_cast<long long>(*b.wall_seconds * 1e6));
  st.max_steps = b.max_steps;
  EvalResult r = eval(*t, s, st);
  return RunResult{std::move(r.s), r.o, std::move(st.trace)};
}

const char* overall_tactic_text() {
  return "((SplitVerticallyMinimal+ ; SplitHorizontal*) onfail SplitHorizontal+) ; "
         "SplitVerticallyMaximal* ; Cleanup* ; "
         "(Factorize+ ; Cleanup* ; SplitVerticallyMinimal*)*";
}

std::pair<Structuring, AutoReport> auto_structure(const Structuring& s, const Budget& b) {
  static const TacticPtr overall = parse_tactic(overall_tactic_text());
  AutoReport rep;
  auto [ax0, th0] = dg::count_local_sentences(s.graph);
  rep.axioms_initial = ax0;
  rep.theorems_initial = th0;
  RunResult run = run_tactic(overall, s, b);
  auto [ax1, th1] = dg::count_local_sentences(run.result.graph);
  rep.axioms_final = ax1;
  rep.theorems_final = th1;
  rep.timed_out = run.outcome == Outcome::TimedOut;
  rep.trace = std::move(run.trace);
  return {std::move(run.result), std::move(rep)};
}

}  // namespace theoryforge::tactics
