#include "helpers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tfh {

using dg::Analysis;
using dg::Entity;
using dg::EntityKey;
using dg::Node;
using dg::NodeId;
using dg::Structuring;
using fol::FormulaPtr;
using fol::NamedSentence;
using fol::Role;
using fol::SignatureMorphism;
using fol::SymbolDecl;
using fol::SymbolKind;
using fol::SymbolSet;
using rules::LocalContent;

std::string data_path(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

Structuring load_structuring(const std::string& file) {
  auto records = tstp::parse_tstp(driver::read_file(data_path(file)));
  return tstp::initial_structuring(records);
}

FormulaPtr pf(const std::string& text) { return tstp::parse_formula(text); }

NamedSentence mk(const std::string& name, Role role, const std::string& text) {
  return NamedSentence::make(name, role, pf(text));
}

LocalContent select(const Node& n, const std::vector<std::string>& symbol_names,
                    const std::vector<std::string>& sentence_names) {
  LocalContent c;
  std::set<std::string> syms(symbol_names.begin(), symbol_names.end());
  std::set<std::string> sents(sentence_names.begin(), sentence_names.end());
  for (const auto& d : n.sig)
    if (syms.count(d.name)) c.sig.insert(d);
  for (const auto& x : n.axioms)
    if (sents.count(x.name)) c.axioms.push_back(x);
  for (const auto& x : n.lemmas)
    if (sents.count(x.name)) c.lemmas.push_back(x);
  return c;
}

Structuring field_initial() { return load_structuring("field.p"); }

Structuring field_graph1() {
  Structuring s = field_initial();
  const Node& n = s.graph.nodes.at("theory");
  LocalContent upper = select(n, {}, {"distributivity"});
  LocalContent lower = select(n, {"plus", "times", "zero", "one", "minus", "inv"},
                              {"plus_assoc", "plus_comm", "plus_ident", "plus_inverse",
                               "times_assoc", "times_comm", "times_ident", "times_inverse"});
  return rules::vertical_split(s, "theory", lower, upper, "groups", "field_top");
}

Structuring field_graph2() {
  Structuring s = field_graph1();
  const Node& n = s.graph.nodes.at("groups");
  LocalContent plus_part = select(n, {"plus", "zero", "minus"},
                                  {"plus_assoc", "plus_comm", "plus_ident", "plus_inverse"});
  LocalContent times_part = select(n, {"times", "one", "inv"},
                                   {"times_assoc", "times_comm", "times_ident", "times_inverse"});
  return rules::horizontal_split(s, "groups", {plus_part, times_part}, {"plus_grp", "times_grp"});
}

rules::FactorizationCandidate field_candidate() {
  rules::FactorizationCandidate c;
  c.members = {"plus_grp", "times_grp"};
  c.content.sig = {SymbolDecl{"o", 2, SymbolKind::Function}, SymbolDecl{"e", 0, SymbolKind::Function},
                   SymbolDecl{"i", 1, SymbolKind::Function}};
  c.content.axioms = {mk("assoc_o", Role::Axiom, "! [X,Y,Z] : o(X,o(Y,Z)) = o(o(X,Y),Z)"),
                      mk("comm_o", Role::Axiom, "! [X,Y] : o(X,Y) = o(Y,X)"),
                      mk("ident_o", Role::Axiom, "! [X] : o(X,e) = X"),
                      mk("inverse_o", Role::Axiom, "! [X] : o(X,i(X)) = e")};
  c.instance_morphisms = {
      SignatureMorphism::of({{"o", "plus"}, {"e", "zero"}, {"i", "minus"}}, {}),
      SignatureMorphism::of({{"o", "times"}, {"e", "one"}, {"i", "inv"}}, {})};
  c.factor_id = "abelian_group";
  return c;
}

Structuring field_graph4() { return rules::factorize(field_graph2(), field_candidate()); }

// ---------------------------------------------------------------------------

namespace {

std::string node_fingerprint(const Node& n) {
  std::string out;
  for (const auto& d : n.sig) out += "y:" + to_string(d) + ";";
  auto side = [&](const std::vector<NamedSentence>& xs, const char* tag) {
    std::vector<std::string> parts;
    for (const auto& x : xs) parts.push_back(std::string(tag) + x.name + "=" + x.alpha_fp);
    std::sort(parts.begin(), parts.end());
    for (const auto& p : parts) out += p + ";";
  };
  side(n.axioms, "a:");
  side(n.lemmas, "l:");
  return out;
}

}  // namespace

bool entity_isomorphic(const Structuring& a, const Structuring& b) {
  if (a.graph.nodes.size() != b.graph.nodes.size()) return false;
  if (a.graph.links.size() != b.graph.links.size()) return false;
  if (a.supp.entries != b.supp.entries) return false;
  if (!(a.reference == b.reference)) return false;

  // Group nodes of b by content fingerprint, then search for a bijection that
  // also matches the link structure.
  std::map<std::string, std::vector<NodeId>> pool;
  for (const auto& [id, n] : b.graph.nodes) pool[node_fingerprint(n)].push_back(id);

  std::vector<NodeId> a_ids;
  for (const auto& [id, _] : a.graph.nodes) a_ids.push_back(id);
  std::map<NodeId, NodeId> assign;
  std::set<NodeId> used;

  auto links_match = [&]() {
    std::multiset<std::string> la, lb;
    for (const auto& l : a.graph.links) {
      la.insert(assign.at(l.source) + ">" + assign.at(l.target) + "[" + l.morphism.to_string() + "]");
    }
    for (const auto& l : b.graph.links) {
      lb.insert(l.source + ">" + l.target + "[" + l.morphism.to_string() + "]");
    }
    return la == lb;
  };

  std::function<bool(size_t)> step = [&](size_t i) -> bool {
    if (i == a_ids.size()) return links_match();
    const Node& n = a.graph.nodes.at(a_ids[i]);
    auto it = pool.find(node_fingerprint(n));
    if (it == pool.end()) return false;
    for (const auto& cand : it->second) {
      if (used.count(cand)) continue;
      used.insert(cand);
      assign[a_ids[i]] = cand;
      if (step(i + 1)) return true;
      used.erase(cand);
      assign.erase(a_ids[i]);
    }
    return false;
  };
  return step(0);
}

// ---------------------------------------------------------------------------

int Gen::irand(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Gen::chance(double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

namespace {

fol::TermPtr make_term(Gen& g, const std::vector<SymbolDecl>& fns,
                       const std::vector<std::string>& vars, int depth) {
  if (depth <= 0 || fns.empty() || g.chance(0.5)) return fol::var(g.pick(vars));
  const SymbolDecl& f = g.pick(fns);
  std::vector<fol::TermPtr> args;
  for (int i = 0; i < f.arity; ++i) args.push_back(make_term(g, fns, vars, depth - 1));
  return fol::app(f.name, std::move(args));
}

FormulaPtr make_atom(Gen& g, const SymbolDecl& lead, const std::vector<SymbolDecl>& fns,
                     const std::vector<std::string>& vars) {
  if (lead.kind == SymbolKind::Predicate) {
    std::vector<fol::TermPtr> args;
    for (int i = 0; i < lead.arity; ++i) args.push_back(make_term(g, fns, vars, 1));
    return fol::atom(lead.name, std::move(args));
  }
  std::vector<fol::TermPtr> args;
  for (int i = 0; i < lead.arity; ++i) args.push_back(fol::var(g.pick(vars)));
  return fol::equal(fol::app(lead.name, std::move(args)), fol::var(g.pick(vars)));
}

FormulaPtr closed_formula_over(Gen& g, const SymbolSet& pool, const SymbolDecl& must_use) {
  std::vector<std::string> vars;
  int nv = g.irand(1, 3);
  for (int i = 0; i < nv; ++i) vars.push_back("X" + std::to_string(i + 1));
  std::vector<SymbolDecl> fns, all(pool.begin(), pool.end());
  for (const auto& d : pool)
    if (d.kind == SymbolKind::Function) fns.push_back(d);

  FormulaPtr f = make_atom(g, must_use, fns, vars);
  int extra = g.irand(0, 2);
  for (int i = 0; i < extra && !all.empty(); ++i) {
    FormulaPtr other = make_atom(g, g.pick(all), fns, vars);
    if (g.chance(0.3)) other = fol::lnot(other);
    switch (g.irand(0, 2)) {
      case 0: f = fol::land(f, other); break;
      case 1: f = fol::lor(f, other); break;
      default: f = fol::implies(other, f); break;
    }
  }
  auto free = fol::free_variables(f);
  if (free.empty()) return f;
  std::vector<std::string> binders(free.begin(), free.end());
  return g.chance(0.85) ? fol::forall(binders, f) : fol::exists(binders, f);
}

}  // namespace

FormulaPtr Gen::random_closed_formula(const SymbolSet& pool) {
  std::vector<SymbolDecl> all(pool.begin(), pool.end());
  return closed_formula_over(*this, pool, pick(all));
}

namespace {

struct NodeDraft {
  Node node;
  SymbolSet vis_sig;                 // own + identity-visible imported signature
  std::vector<std::string> vis_sents;  // names usable as supports
  bool lemma_free_dom = true;        // no lemma anywhere in the domain
};

std::optional<Structuring> try_random_structuring(Gen& g) {
  int n_nodes = g.irand(2, 8);
  std::vector<NodeDraft> drafts(static_cast<size_t>(n_nodes));
  dg::DevelopmentGraph graph;
  dg::SupportMapping supp;
  std::set<std::string> used_fps;  // alpha-duplicate sentences degenerate into
                                   // entity self-support; keep formulas unique

  int entity_budget = 40;
  for (int i = 0; i < n_nodes; ++i) {
    NodeDraft& d = drafts[static_cast<size_t>(i)];
    d.node.id = "g" + std::to_string(i);

    // Links from earlier nodes; renamings only out of lemma-free domains.
    std::set<int> sources;
    if (i > 0) {
      int k = g.irand(0, std::min(2, i));
      while (static_cast<int>(sources.size()) < k) sources.insert(g.irand(0, i - 1));
    }

    bool cloned = false;
    if (i > 0 && g.chance(0.4)) {
      // Renamed copy of an earlier node, sharing its import structure; this
      // seeds factorization families.
      int p = g.irand(0, i - 1);
      const NodeDraft& src = drafts[static_cast<size_t>(p)];
      if (!src.node.empty()) {
        cloned = true;
        SignatureMorphism rho;
        for (const auto& sym : src.node.sig) {
          std::string fresh = "c" + std::to_string(i) + "_" + std::to_string(++g.uniq);
          rho.add(sym.kind, sym.name, fresh);
          d.node.sig.insert(SymbolDecl{fresh, sym.arity, sym.kind});
        }
        std::map<std::string, std::string> rename;
        auto clone_side = [&](const std::vector<NamedSentence>& side) {
          for (const auto& x : side) {
            std::string nm = "s" + std::to_string(i) + "_" + std::to_string(++g.uniq);
            rename[x.name] = nm;
            NamedSentence copy = NamedSentence::make(nm, x.role, fol::apply_morphism(rho, x.formula));
            (x.role == Role::Axiom ? d.node.axioms : d.node.lemmas).push_back(copy);
          }
        };
        clone_side(src.node.axioms);
        clone_side(src.node.lemmas);
        for (const auto& x : src.node.lemmas) {
          std::set<std::string> refs;
          for (const auto& r : supp.supports_of(x.name))
            refs.insert(rename.count(r) ? rename.at(r) : r);
          if (!refs.empty()) supp.entries[rename.at(x.name)] = std::move(refs);
        }
        // Mirror the source's imports so the pair shares them.
        sources.clear();
        for (const auto& l : graph.links)
          if (l.target == src.node.id && l.morphism.is_identity()) {
            for (int q = 0; q < i; ++q)
              if (drafts[static_cast<size_t>(q)].node.id == l.source) sources.insert(q);
          }
      }
    }

    if (!cloned) {
      int nsyms = g.irand(1, 3);
      for (int k = 0; k < nsyms; ++k) {
        std::string nm = "m" + std::to_string(i) + "_" + std::to_string(++g.uniq);
        d.node.sig.insert(SymbolDecl{nm, g.irand(0, 2),
                                     g.chance(0.5) ? SymbolKind::Predicate : SymbolKind::Function});
      }
    }

    // Wire the chosen imports.
    graph.nodes.emplace(d.node.id, d.node);  // placeholder; content finished below
    for (int p : sources) {
      NodeDraft& src = drafts[static_cast<size_t>(p)];
      SignatureMorphism m;
      if (src.lemma_free_dom && g.chance(0.25) && !src.node.sig.empty()) {
        std::vector<SymbolDecl> own(src.node.sig.begin(), src.node.sig.end());
        const SymbolDecl& victim = g.pick(own);
        m.add(victim.kind, victim.name, "r" + std::to_string(++g.uniq));
      }
      graph.add_link(src.node.id, d.node.id, m);
      if (m.is_identity()) {
        for (const auto& sym : src.vis_sig) d.vis_sig.insert(sym);
        for (const auto& nm : src.vis_sents) d.vis_sents.push_back(nm);
      }
      d.lemma_free_dom = d.lemma_free_dom && src.lemma_free_dom;
    }
    for (const auto& sym : d.node.sig) d.vis_sig.insert(sym);

    if (!cloned) {
      std::vector<SymbolDecl> own(d.node.sig.begin(), d.node.sig.end());
      auto fresh_formula = [&]() -> fol::FormulaPtr {
        for (int attempt = 0; attempt < 8; ++attempt) {
          auto f = closed_formula_over(g, d.vis_sig, g.pick(own));
          if (used_fps.insert(fol::alpha_fingerprint(f)).second) return f;
        }
        return nullptr;
      };
      int nax = std::min(g.irand(1, 3), entity_budget);
      for (int k = 0; k < nax; ++k) {
        auto f = fresh_formula();
        if (!f) continue;
        std::string nm = "s" + std::to_string(i) + "_" + std::to_string(++g.uniq);
        d.node.axioms.push_back(NamedSentence::make(nm, Role::Axiom, f));
      }
      int nlem = std::min(g.irand(0, 2), entity_budget - nax);
      for (int k = 0; k < nlem; ++k) {
        auto f = fresh_formula();
        if (!f) continue;
        std::string nm = "s" + std::to_string(i) + "_" + std::to_string(++g.uniq);
        NamedSentence lem = NamedSentence::make(nm, Role::Lemma, f);
        std::set<std::string> refs;
        std::vector<std::string> pool = d.vis_sents;
        for (const auto& x : d.node.axioms) pool.push_back(x.name);
        for (const auto& x : d.node.lemmas) pool.push_back(x.name);
        int nref = pool.empty() ? 0 : g.irand(0, 2);
        for (int r = 0; r < nref; ++r) refs.insert(g.pick(pool));
        d.node.lemmas.push_back(lem);
        if (!refs.empty()) supp.entries[nm] = std::move(refs);
      }
    }
    if (!d.node.lemmas.empty()) d.lemma_free_dom = false;
    entity_budget -= static_cast<int>(d.node.sig.size() + d.node.axioms.size() + d.node.lemmas.size());

    for (const auto& x : d.node.axioms) d.vis_sents.push_back(x.name);
    for (const auto& x : d.node.lemmas) d.vis_sents.push_back(x.name);
    d.node.normalize();
    graph.nodes[d.node.id] = d.node;
    if (entity_budget <= 0) {
      n_nodes = i + 1;
      break;
    }
  }

  Structuring s;
  s.graph = std::move(graph);
  s.supp = std::move(supp);
  if (!dg::validate_graph(s.graph).empty()) return std::nullopt;
  auto loc = dg::compute_location(s.graph);
  if (!loc.loc) return std::nullopt;
  s.loc = std::move(*loc.loc);
  Analysis a(s.graph);
  for (const auto& r : a.roots()) s.reference.merge(a.domain(r));
  if (!dg::check_structuring(s).empty()) return std::nullopt;
  return s;
}

}  // namespace

dg::Structuring Gen::random_structuring() {
  for (int attempt = 0; attempt < 200; ++attempt) {
    if (auto s = try_random_structuring(*this)) return std::move(*s);
  }
  throw std::runtime_error("random_structuring: rejection sampling exhausted");
}

// ---------------------------------------------------------------------------
// Random applicable rule application.

namespace {

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

bool nothing_imported_located_at(const Structuring& s, const NodeId& node) {
  std::set<EntityKey> local;
  for (const auto& e : Analysis::local_domain(s.graph.nodes.at(node)).entities())
    local.insert(e.key());
  for (const auto& [k, at] : s.loc.at)
    if (at == node && !local.count(k)) return false;
  return true;
}

}  // namespace

std::set<EntityKey> domain_keys(const Analysis& a, const NodeId& n) {
  std::set<EntityKey> out;
  for (const auto& e : a.domain(n).entities()) out.insert(e.key());
  return out;
}

std::optional<dg::Structuring> random_rule_step(Gen& g, const dg::Structuring& s, StepInfo* info) {
  struct Candidate {
    std::string kind;
    std::function<std::optional<Structuring>(StepInfo*)> apply;
  };
  std::vector<Candidate> candidates;
  Analysis a(s.graph);

  // Splits.
  for (const auto& [nid, node] : s.graph.nodes) {
    tactics::DependencyGraph dep = tactics::dependency_graph(s, nid);
    if (dep.vertices.empty()) continue;
    auto comps = dep.components();
    if (comps.size() >= 2 && nothing_imported_located_at(s, nid)) {
      NodeId id = nid;
      auto comps_copy = comps;
      candidates.push_back({"hsplit", [&s, id, comps_copy, &g](StepInfo* out) -> std::optional<Structuring> {
        const Node& n = s.graph.nodes.at(id);
        size_t pivot = static_cast<size_t>(g.irand(0, static_cast<int>(comps_copy.size()) - 1));
        std::set<EntityKey> one(comps_copy[pivot].begin(), comps_copy[pivot].end());
        std::set<EntityKey> rest;
        for (size_t i = 0; i < comps_copy.size(); ++i)
          if (i != pivot) rest.insert(comps_copy[i].begin(), comps_copy[i].end());
        std::vector<dg::NodeId> ids{id + "_a", id + "_b"};
        try {
          Analysis before(s.graph);
          Structuring r = rules::horizontal_split(
              s, id, {content_from_keys(n, one), content_from_keys(n, rest)}, ids);
          if (out) {
            out->kind = "hsplit";
            out->split_node = id;
            // ids may have been freshened; recover actual new node names
            out->sibling_ids.clear();
            for (const auto& [cand_id, _] : r.graph.nodes)
              if (!s.graph.nodes.count(cand_id)) out->sibling_ids.push_back(cand_id);
            out->old_node_domain = domain_keys(before, id);
          }
          return r;
        } catch (const rules::PreconditionError&) {
          return std::nullopt;
        }
      }});
    }
    for (bool maximal : {false, true}) {
      std::set<EntityKey> chosen = maximal ? dep.maximal() : dep.minimal();
      if (chosen.empty() || chosen.size() >= dep.vertices.size()) continue;
      std::set<EntityKey> rest;
      for (const auto& v : dep.vertices)
        if (!chosen.count(v)) rest.insert(v);
      NodeId id = nid;
      candidates.push_back({"vsplit", [&s, id, chosen, rest, maximal](StepInfo* out) -> std::optional<Structuring> {
        const Node& n = s.graph.nodes.at(id);
        LocalContent upper = content_from_keys(n, maximal ? chosen : rest);
        LocalContent lower = content_from_keys(n, maximal ? rest : chosen);
        try {
          if (!rules::lemma_independent(s, id, lower)) return std::nullopt;
          Structuring r = rules::vertical_split(s, id, lower, upper);
          if (out) out->kind = "vsplit";
          return r;
        } catch (const rules::PreconditionError&) {
          return std::nullopt;
        }
      }});
    }
  }

  // Enrichment over a sampled pair.
  {
    std::vector<NodeId> ids;
    for (const auto& [id, _] : s.graph.nodes) ids.push_back(id);
    for (int t = 0; t < 3; ++t) {
      NodeId from = g.pick(ids), to = g.pick(ids);
      if (from == to) continue;
      auto ms = a.reachable(from, to);
      if (ms.empty()) continue;
      fol::SignatureMorphism m = ms[static_cast<size_t>(g.irand(0, static_cast<int>(ms.size()) - 1))];
      candidates.push_back({"enrich", [&s, from, to, m](StepInfo* out) -> std::optional<Structuring> {
        try {
          Structuring r = rules::transitive_enrich(s, from, to, m);
          if (out) out->kind = "enrich";
          return r;
        } catch (const rules::PreconditionError&) {
          return std::nullopt;
        }
      }});
      break;
    }
  }

  // Removable links (sampled).
  {
    std::vector<int> link_ids;
    for (const auto& l : s.graph.links) link_ids.push_back(l.id);
    std::shuffle(link_ids.begin(), link_ids.end(), g.rng);
    int tested = 0;
    for (int lid : link_ids) {
      if (tested++ >= 4) break;
      if (rules::check_removable(s, lid).removable) {
        candidates.push_back({"remove", [&s, lid](StepInfo* out) -> std::optional<Structuring> {
          try {
            Structuring r = rules::remove_link(s, lid);
            if (out) out->kind = "remove";
            return r;
          } catch (const rules::NotRemovableError&) {
            return std::nullopt;
          }
        }});
        break;
      }
    }
  }

  // Vertical merges.
  for (const auto& [nid, node] : s.graph.nodes) {
    auto out_links = s.graph.links_from(nid);
    if (out_links.empty()) continue;
    const NodeId& tgt = out_links[0]->target;
    bool shape = true;
    for (const auto* l : out_links)
      if (l->target != tgt || !l->morphism.is_identity()) shape = false;
    if (!shape) continue;
    NodeId id = nid, to = tgt;
    candidates.push_back({"merge", [&s, id, to](StepInfo* out) -> std::optional<Structuring> {
      try {
        Structuring r = rules::vertical_merge(s, id, to);
        if (out) out->kind = "merge";
        return r;
      } catch (const rules::PreconditionError&) {
        return std::nullopt;
      }
    }});
  }

  // Factorization (scanned occasionally; the search is the expensive part).
  if (g.chance(0.5)) {
    if (auto cand = tactics::find_factorization_candidate(s)) {
      rules::FactorizationCandidate c = *cand;
      candidates.push_back({"factorize", [&s, c](StepInfo* out) -> std::optional<Structuring> {
        rules::FactorizationCandidate cc = c;
        cc.factor_id = "f_law";
        cc.instance_ids.clear();
        for (const auto& m : cc.members) cc.instance_ids.push_back(m + "_law");
        try {
          Analysis before(s.graph);
          Structuring r = rules::factorize(s, cc);
          if (out) {
            out->kind = "factorize";
            out->members = cc.members;
            out->instance_ids.clear();
            out->old_member_domains.clear();
            out->mapped_factor_lemmas.clear();
            for (size_t j = 0; j < cc.members.size(); ++j) {
              out->old_member_domains.push_back(domain_keys(before, cc.members[j]));
              std::set<EntityKey> mapped;
              for (const auto& x : cc.content.lemmas)
                mapped.insert(Entity::of(map_sentence(cc.instance_morphisms[j], x)).key());
              out->mapped_factor_lemmas.push_back(std::move(mapped));
              // instance ids may have been freshened
              for (const auto& [cand_id, _] : r.graph.nodes) {
                if (cand_id.rfind(cc.members[j] + "_law", 0) == 0 && !s.graph.nodes.count(cand_id))
                  out->instance_ids.push_back(cand_id);
              }
            }
          }
          return r;
        } catch (const rules::PreconditionError&) {
          return std::nullopt;
        }
      }});
    }
  }

  // Apply a random applicable candidate; fall through on internal refusal.
  std::shuffle(candidates.begin(), candidates.end(), g.rng);
  for (auto& c : candidates) {
    if (auto r = c.apply(info)) return r;
  }
  return std::nullopt;
}

}  // namespace tfh
