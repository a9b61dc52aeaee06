#include "theoryforge/devgraph.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace theoryforge::dg {

using fol::NamedSentence;
using fol::SignatureMorphism;
using fol::SymbolDecl;
using fol::SymbolSet;

// ---------------------------------------------------------------------------

void Node::normalize() {
  auto by_name = [](const NamedSentence& a, const NamedSentence& b) { return a.name < b.name; };
  std::sort(axioms.begin(), axioms.end(), by_name);
  std::sort(lemmas.begin(), lemmas.end(), by_name);
}

int DevelopmentGraph::add_link(const NodeId& source, const NodeId& target, SignatureMorphism m) {
  if (source == target) throw std::invalid_argument("self link on '" + source + "'");
  if (!nodes.count(source)) throw UnknownNodeError(source);
  if (!nodes.count(target)) throw UnknownNodeError(target);
  Link l;
  l.id = next_link_id++;
  l.source = source;
  l.target = target;
  l.morphism = std::move(m);
  links.push_back(std::move(l));
  return links.back().id;
}

void DevelopmentGraph::remove_link(int link_id) {
  auto it = std::find_if(links.begin(), links.end(), [&](const Link& l) { return l.id == link_id; });
  if (it == links.end()) throw std::invalid_argument("no link with id " + std::to_string(link_id));
  links.erase(it);
}

const Link* DevelopmentGraph::find_link(int link_id) const {
  for (const auto& l : links)
    if (l.id == link_id) return &l;
  return nullptr;
}

std::vector<const Link*> DevelopmentGraph::links_into(const NodeId& n) const {
  std::vector<const Link*> out;
  for (const auto& l : links)
    if (l.target == n) out.push_back(&l);
  return out;
}

std::vector<const Link*> DevelopmentGraph::links_from(const NodeId& n) const {
  std::vector<const Link*> out;
  for (const auto& l : links)
    if (l.source == n) out.push_back(&l);
  return out;
}

NodeId DevelopmentGraph::fresh_node_id(const std::string& base) const {
  if (!nodes.count(base)) return base;
  for (int k = 2;; ++k) {
    NodeId candidate = base + "~" + std::to_string(k);
    if (!nodes.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------

Entity Entity::of(const SymbolDecl& s) {
  Entity e;
  e.kind = Kind::Symbol;
  e.symbol = s;
  return e;
}

Entity Entity::of(const NamedSentence& s) {
  Entity e;
  e.kind = Kind::Sentence;
  e.sentence = s;
  return e;
}

EntityKey Entity::key() const {
  EntityKey k;
  if (kind == Kind::Symbol) {
    k.tag = 0;
    k.text = symbol.name;
    k.arity = symbol.arity;
    k.sk = symbol.kind;
  } else {
    k.tag = 1;
    k.text = sentence.alpha_fp;
    k.role = sentence.role;
  }
  return k;
}

std::string Entity::describe() const {
  if (kind == Kind::Symbol) return to_string(symbol);
  return std::string(to_string(sentence.role)) + " '" + sentence.name + "'";
}

Entity map_entity(const SignatureMorphism& sigma, const Entity& e) {
  if (e.kind == Entity::Kind::Symbol) return Entity::of(sigma.apply(e.symbol));
  return Entity::of(map_sentence(sigma, e.sentence));
}

// ---------------------------------------------------------------------------

void Domain::insert_sentence(const NamedSentence& s) {
  auto& m = s.role == fol::Role::Axiom ? axioms : lemmas;
  auto [it, fresh] = m.try_emplace(s.alpha_fp, SentenceEntity{s, {s.name}});
  if (!fresh) it->second.names.insert(s.name);
}

void Domain::insert(const Entity& e) {
  if (e.kind == Entity::Kind::Symbol)
    insert_symbol(e.symbol);
  else
    insert_sentence(e.sentence);
}

void Domain::merge(const Domain& other) {
  for (const auto& s : other.sig) sig.insert(s);
  for (const auto& [fp, se] : other.axioms) {
    auto [it, fresh] = axioms.try_emplace(fp, se);
    if (!fresh) it->second.names.insert(se.names.begin(), se.names.end());
  }
  for (const auto& [fp, se] : other.lemmas) {
    auto [it, fresh] = lemmas.try_emplace(fp, se);
    if (!fresh) it->second.names.insert(se.names.begin(), se.names.end());
  }
}

bool Domain::contains(const Entity& e) const { return contains_key(e.key()); }

bool Domain::contains_key(const EntityKey& k) const {
  if (k.tag == 0) return sig.count(SymbolDecl{k.text, k.arity, k.sk}) > 0;
  const auto& m = k.role == fol::Role::Axiom ? axioms : lemmas;
  return m.count(k.text) > 0;
}

std::vector<Entity> Domain::entities() const {
  std::vector<Entity> out;
  out.reserve(size());
  for (const auto& s : sig) out.push_back(Entity::of(s));
  for (const auto& [fp, se] : axioms) out.push_back(Entity::of(se.sentence));
  for (const auto& [fp, se] : lemmas) out.push_back(Entity::of(se.sentence));
  return out;
}

std::optional<Entity> Domain::find_name(const std::string& name) const {
  for (const auto& [fp, se] : axioms)
    if (se.names.count(name)) return Entity::of(se.sentence);
  for (const auto& [fp, se] : lemmas)
    if (se.names.count(name)) return Entity::of(se.sentence);
  return std::nullopt;
}

bool operator==(const Domain& a, const Domain& b) {
  if (a.sig != b.sig) return false;
  auto keys_equal = [](const std::map<std::string, SentenceEntity>& x,
                       const std::map<std::string, SentenceEntity>& y) {
    if (x.size() != y.size()) return false;
    auto i = x.begin();
    auto j = y.begin();
    for (; i != x.end(); ++i, ++j)
      if (i->first != j->first) return false;
    return true;
  };
  return keys_equal(a.axioms, b.axioms) && keys_equal(a.lemmas, b.lemmas);
}

// ---------------------------------------------------------------------------

std::set<std::string> SupportMapping::supports_of(const std::string& lemma) const {
  auto it = entries.find(lemma);
  return it == entries.end() ? std::set<std::string>{} : it->second;
}

std::optional<std::vector<std::string>> SupportMapping::find_cycle() const {
  enum { White, Grey, Black };
  std::map<std::string, int> color;
  std::vector<std::string> stack;
  std::optional<std::vector<std::string>> cycle;

  std::function<bool(const std::string&)> dfs = [&](const std::string& n) -> bool {
    color[n] = Grey;
    stack.push_back(n);
    auto it = entries.find(n);
    if (it != entries.end()) {
      for (const auto& m : it->second) {
        int c = color.count(m) ? color[m] : White;
        if (c == Grey) {
          auto from = std::find(stack.begin(), stack.end(), m);
          cycle = std::vector<std::string>(from, stack.end());
          return true;
        }
        if (c == White && dfs(m)) return true;
      }
    }
    stack.pop_back();
    color[n] = Black;
    return false;
  };

  for (const auto& [n, _] : entries) {
    if ((color.count(n) ? color[n] : White) == White && dfs(n)) return cycle;
  }
  return std::nullopt;
}

bool SupportMapping::acyclic() const { return !find_cycle().has_value(); }

const NodeId* LocationMapping::find(const EntityKey& k) const {
  auto it = at.find(k);
  return it == at.end() ? nullptr : &it->second;
}

std::map<NodeId, std::set<EntityKey>> LocationMapping::inverse() const {
  std::map<NodeId, std::set<EntityKey>> out;
  for (const auto& [k, n] : at) out[n].insert(k);
  return out;
}

Structuring make_initial(Node node, SupportMapping supp) {
  node.normalize();
  Structuring s;
  s.reference = Analysis::local_domain(node);
  for (const auto& e : s.reference.entities()) s.loc.at[e.key()] = node.id;
  s.graph.nodes.emplace(node.id, std::move(node));
  s.supp = std::move(supp);
  return s;
}

// ---------------------------------------------------------------------------

bool has_code(const Diagnostics& ds, DiagCode c) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == c; });
}

std::string render(const Diagnostics& ds) {
  std::ostringstream os;
  for (const auto& d : ds) os << d.message << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::string smallest_local_name(const Node& n) {
  std::string best;
  bool have = false;
  auto consider = [&](const std::string& s) {
    if (!have || s < best) {
      best = s;
      have = true;
    }
  };
  for (const auto& d : n.sig) consider(d.name);
  for (const auto& s : n.axioms) consider(s.name);
  for (const auto& s : n.lemmas) consider(s.name);
  return have ? best : n.id;
}

Domain map_domain(const SignatureMorphism& sigma, const Domain& d) {
  Domain out;
  out.sig = fol::map_symbols(sigma, d.sig);
  auto map_side = [&](const std::map<std::string, SentenceEntity>& side) {
    std::map<std::string, SentenceEntity> res;
    for (const auto& [fp, se] : side) {
      NamedSentence img = map_sentence(sigma, se.sentence);
      auto [it, fresh] = res.try_emplace(img.alpha_fp, SentenceEntity{img, {}});
      bool changed = img.alpha_fp != se.sentence.alpha_fp;
      for (const auto& alias : se.names) {
        if (!changed) {
          it->second.names.insert(alias);
        } else {
          std::string base = alias.substr(0, alias.find('@'));
          it->second.names.insert(img.alpha_fp == se.sentence.base_fp
                                      ? base
                                      : base + "@" + fol::short_hash(img.alpha_fp));
        }
      }
      it->second.names.insert(img.name);
    }
    return res;
  };
  out.axioms = map_side(d.axioms);
  out.lemmas = map_side(d.lemmas);
  return out;
}

}  // namespace

Analysis::Analysis(const DevelopmentGraph& g) : g_(g) {
  // Kahn from import sources, deterministic tie-break.
  std::map<NodeId, int> indeg;
  for (const auto& [id, _] : g.nodes) indeg[id] = 0;
  for (const auto& l : g.links) {
    if (g.nodes.count(l.source) && g.nodes.count(l.target)) indeg[l.target]++;
  }
  auto order_key = [&](const NodeId& id) {
    return std::make_pair(smallest_local_name(g.nodes.at(id)), id);
  };
  std::set<std::pair<std::pair<std::string, NodeId>, NodeId>> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.insert({order_key(id), id});
  while (!ready.empty()) {
    NodeId id = ready.begin()->second;
    ready.erase(ready.begin());
    topo_.push_back(id);
    for (const auto& l : g.links) {
      if (l.source != id || !g.nodes.count(l.target)) continue;
      if (--indeg[l.target] == 0) ready.insert({order_key(l.target), l.target});
    }
  }
  acyclic_ = topo_.size() == g.nodes.size();
}

const std::vector<NodeId>& Analysis::topo_order() const { return topo_; }

std::vector<NodeId> Analysis::roots() const {
  std::vector<NodeId> out;
  for (const auto& [id, _] : g_.nodes)
    if (g_.links_from(id).empty()) out.push_back(id);
  return out;
}

Domain Analysis::local_domain(const Node& n) {
  Domain d;
  for (const auto& s : n.sig) d.insert_symbol(s);
  for (const auto& s : n.axioms) d.insert_sentence(s);
  for (const auto& s : n.lemmas) d.insert_sentence(s);
  return d;
}

void Analysis::ensure_domains() const {
  if (domains_done_) return;
  if (!acyclic_) throw std::logic_error("domain computation on a cyclic graph");
  for (const auto& id : topo_) {
    Domain d = local_domain(g_.nodes.at(id));
    for (const auto* l : g_.links_into(id)) {
      if (!g_.nodes.count(l->source)) continue;
      d.merge(map_domain(l->morphism, domains_.at(l->source)));
    }
    whole_.merge(d);
    domains_.emplace(id, std::move(d));
  }
  domains_done_ = true;
}

const Domain& Analysis::domain(const NodeId& n) const {
  if (!g_.nodes.count(n)) throw UnknownNodeError(n);
  ensure_domains();
  return domains_.at(n);
}

const Domain& Analysis::whole() const {
  ensure_domains();
  return whole_;
}

std::optional<Entity> Analysis::find_name_global(const std::string& name) const {
  return whole().find_name(name);
}

const std::vector<SignatureMorphism>& Analysis::reachable(const NodeId& from, const NodeId& to) const {
  if (!g_.nodes.count(from)) throw UnknownNodeError(from);
  if (!g_.nodes.count(to)) throw UnknownNodeError(to);
  auto key = std::make_pair(from, to);
  auto it = reach_.find(key);
  if (it != reach_.end()) return it->second;

  std::vector<SignatureMorphism> result;
  if (from == to) {
    result.push_back(SignatureMorphism::identity());
  } else {
    for (const auto* l : g_.links_from(from)) {
      if (!g_.nodes.count(l->target)) continue;
      for (const auto& rest : reachable(l->target, to)) {
        SignatureMorphism m = compose(rest, l->morphism);
        if (std::find(result.begin(), result.end(), m) == result.end()) result.push_back(std::move(m));
      }
    }
  }
  return reach_.emplace(key, std::move(result)).first->second;
}

void Analysis::ensure_provisions() const {
  if (provisions_done_) return;
  ensure_domains();
  for (const auto& [id, node] : g_.nodes) {
    auto links_in = g_.links_into(id);
    for (const auto& e : domains_.at(id).entities()) {
      bool provided = true;
      for (const auto* l : links_in) {
        if (domains_.at(l->source).contains(e)) {
          provided = false;
          break;
        }
      }
      if (!provided) continue;
      EntityKey k = e.key();
      provided_[id].insert(k);
      Domain local = local_domain(node);
      if (!local.contains(e)) {
        for (const auto* l : links_in) {
          for (const auto& pre : domains_.at(l->source).entities()) {
            if (map_entity(l->morphism, pre).key() == k) {
              providing_links_[k]++;
              break;
            }
          }
        }
      }
    }
    provided_.try_emplace(id);
  }
  provisions_done_ = true;
}

std::vector<Analysis::Provision> Analysis::providers(const Entity& e) const {
  ensure_provisions();
  if (!whole().contains(e)) throw UnknownEntityError(e.describe());
  EntityKey k = e.key();
  std::vector<Provision> out;
  for (const auto& [id, keys] : provided_) {
    if (!keys.count(k)) continue;
    Provision p;
    p.node = id;
    p.local = local_domain(g_.nodes.at(id)).contains_key(k);
    if (!p.local) {
      for (const auto* l : g_.links_into(id)) {
        for (const auto& pre : domains_.at(l->source).entities()) {
          if (map_entity(l->morphism, pre).key() == k) {
            p.by_links.emplace_back(l->id, pre);
            break;
          }
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

const std::set<EntityKey>& Analysis::provided_at(const NodeId& n) const {
  ensure_provisions();
  auto it = provided_.find(n);
  if (it == provided_.end()) throw UnknownNodeError(n);
  return it->second;
}

int Analysis::providing_link_count(const EntityKey& k) const {
  ensure_provisions();
  auto it = providing_links_.find(k);
  return it == providing_links_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------

std::set<NodeId> roots(const DevelopmentGraph& g) {
  std::set<NodeId> out;
  for (const auto& [id, _] : g.nodes) out.insert(id);
  for (const auto& l : g.links) out.erase(l.source);
  return out;
}

std::vector<SignatureMorphism> reachable_morphisms(const DevelopmentGraph& g, const NodeId& from,
                                                   const NodeId& to) {
  Analysis a(g);
  return a.reachable(from, to);
}

GlobalDomain global_domain(const DevelopmentGraph& g, const NodeId& n) {
  Analysis a(g);
  const Domain& d = a.domain(n);
  GlobalDomain out;
  out.sig = d.sig;
  for (const auto& [fp, se] : d.axioms) out.axioms.push_back(se.sentence);
  for (const auto& [fp, se] : d.lemmas) out.lemmas.push_back(se.sentence);
  return out;
}

namespace {

std::optional<std::vector<NodeId>> find_graph_cycle(const DevelopmentGraph& g) {
  enum { White, Grey, Black };
  std::map<NodeId, int> color;
  std::vector<NodeId> stack;
  std::optional<std::vector<NodeId>> cycle;
  std::function<bool(const NodeId&)> dfs = [&](const NodeId& n) -> bool {
    color[n] = Grey;
    stack.push_back(n);
    for (const auto& l : g.links) {
      if (l.source != n || !g.nodes.count(l.target)) continue;
      int c = color.count(l.target) ? color[l.target] : White;
      if (c == Grey) {
        auto from = std::find(stack.begin(), stack.end(), l.target);
        cycle = std::vector<NodeId>(from, stack.end());
        return true;
      }
      if (c == White && dfs(l.target)) return true;
    }
    stack.pop_back();
    color[n] = Black;
    return false;
  };
  for (const auto& [id, _] : g.nodes)
    if ((color.count(id) ? color[id] : White) == White && dfs(id)) return cycle;
  return std::nullopt;
}

std::string join(const std::vector<NodeId>& ids, const char* sep) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += ids[i];
  }
  return out;
}

}  // namespace

Diagnostics validate_graph(const DevelopmentGraph& g) {
  Diagnostics out;
  for (const auto& l : g.links) {
    if (!g.nodes.count(l.source) || !g.nodes.count(l.target))
      out.push_back({DiagCode::DanglingLink,
                     "dangling link " + l.source + " -> " + l.target});
  }
  if (auto cycle = find_graph_cycle(g)) {
    out.push_back({DiagCode::CycleFound, "cycle: " + join(*cycle, " -> ")});
    return out;
  }
  if (!out.empty()) return out;

  Analysis a(g);
  for (const auto& [id, node] : g.nodes) {
    const Domain& d = a.domain(id);
    if (!fol::signature_consistent(d.sig)) {
      for (auto it = d.sig.begin(); it != d.sig.end(); ++it) {
        auto jt = std::next(it);
        for (; jt != d.sig.end() && jt->name == it->name; ++jt)
          if (jt->kind == it->kind && jt->arity != it->arity)
            out.push_back({DiagCode::SignatureArityClash,
                           "node " + id + ": signature holds " + to_string(*it) + " and " + to_string(*jt)});
      }
    }
    auto check_side = [&](const std::map<std::string, SentenceEntity>& side) {
      for (const auto& [fp, se] : side) {
        for (const auto& sym : se.sentence.symbols) {
          if (!d.sig.count(sym))
            out.push_back({DiagCode::UndeclaredSymbol,
                           "node " + id + ": symbol " + to_string(sym) + " of '" +
                               se.sentence.name + "' is not declared"});
        }
      }
    };
    check_side(d.axioms);
    check_side(d.lemmas);
  }
  return out;
}

LocationResult compute_location(const Analysis& a) {
  LocationResult res;
  if (!a.acyclic()) {
    res.diags.push_back({DiagCode::CycleFound, "graph is cyclic"});
    return res;
  }
  LocationMapping loc;
  std::set<NodeId> used;
  for (const auto& e : a.whole().entities()) {
    auto provs = a.providers(e);
    if (provs.size() == 1) {
      loc.at[e.key()] = provs[0].node;
      used.insert(provs[0].node);
    } else {
      std::vector<NodeId> ids;
      for (const auto& p : provs) ids.push_back(p.node);
      res.diags.push_back({DiagCode::MultipleProviders,
                           e.describe() + " provided by " + std::to_string(provs.size()) +
                               " nodes: " + join(ids, ", ")});
    }
  }
  // Def. 2(2): local entities must be located at their node.
  for (const auto& [id, node] : a.graph().nodes) {
    for (const auto& e : Analysis::local_domain(node).entities()) {
      auto it = loc.at.find(e.key());
      if (it != loc.at.end() && it->second != id)
        res.diags.push_back({DiagCode::LocalNotLocated,
                             e.describe() + " is local to " + id + " but located at " + it->second});
    }
  }
  // Def. 2(1): surjectivity.
  for (const auto& [id, _] : a.graph().nodes) {
    if (!used.count(id))
      res.diags.push_back({DiagCode::SpuriousNode, "node " + id + " provides nothing"});
  }
  if (res.diags.empty()) res.loc = std::move(loc);
  return res;
}

LocationResult compute_location(const DevelopmentGraph& g) {
  Analysis a(g);
  return compute_location(a);
}

Diagnostics check_support(const Analysis& a, const SupportMapping& supp) {
  Diagnostics out;
  if (auto cycle = supp.find_cycle()) {
    out.push_back({DiagCode::SupportCycle, "support cycle: " + join(*cycle, " -> ")});
  }
  // The induced relation is over entities; a reference that resolves to an
  // alias of the keyed lemma itself is a one-step cycle the name digraph
  // cannot see.
  for (const auto& [fp, se] : a.whole().lemmas) {
    for (const auto& alias : se.names) {
      auto it = supp.entries.find(alias);
      if (it == supp.entries.end()) continue;
      for (const auto& ref : it->second) {
        if (ref != alias && se.names.count(ref))
          out.push_back({DiagCode::SupportCycle,
                         "lemma '" + alias + "' is supported by its own alias '" + ref + "'"});
      }
    }
  }
  for (const auto& id : a.topo_order()) {
    const Domain& d = a.domain(id);
    for (const auto& [fp, se] : d.lemmas) {
      for (const auto& alias : se.names) {
        auto it = supp.entries.find(alias);
        if (it == supp.entries.end()) continue;
        for (const auto& ref : it->second) {
          if (!d.find_name(ref))
            out.push_back({DiagCode::UnresolvedSupport,
                           "node " + id + ": support '" + ref + "' of lemma '" + alias +
                               "' is not visible"});
        }
      }
    }
  }
  return out;
}

Diagnostics check_support(const DevelopmentGraph& g, const SupportMapping& supp) {
  Analysis a(g);
  return check_support(a, supp);
}

Diagnostics check_structuring(const Structuring& s) {
  Diagnostics out = validate_graph(s.graph);
  // Cycles and dangling links make the remaining conditions meaningless;
  // symbol problems do not, so keep collecting.
  if (has_code(out, DiagCode::CycleFound) || has_code(out, DiagCode::DanglingLink)) return out;

  Analysis a(s.graph);

  // Condition 1: loc is a location mapping.
  LocationResult derived = compute_location(a);
  if (!derived.loc) {
    out.insert(out.end(), derived.diags.begin(), derived.diags.end());
  } else {
    for (const auto& [k, n] : derived.loc->at) {
      const NodeId* stored = s.loc.find(k);
      if (!stored || *stored != n) {
        out.push_back({DiagCode::LocationDisagrees,
                       "stored location of an entity at " +
                           (stored ? *stored : std::string("<none>")) + " disagrees with provider " + n});
      }
    }
    for (const auto& [k, n] : s.loc.at) {
      if (!derived.loc->at.count(k))
        out.push_back({DiagCode::LocationDisagrees, "stored location maps a non-domain entity to " + n});
    }
  }

  // Condition 2: root domains against the reference triple.
  Domain root_dom;
  for (const auto& r : a.roots()) root_dom.merge(a.domain(r));
  if (root_dom.sig != s.reference.sig)
    out.push_back({DiagCode::RootSignatureMismatch, "root signature differs from the reference"});
  {
    auto keys = [](const std::map<std::string, SentenceEntity>& m) {
      std::set<std::string> ks;
      for (const auto& [k, _] : m) ks.insert(k);
      return ks;
    };
    if (keys(root_dom.axioms) != keys(s.reference.axioms))
      out.push_back({DiagCode::RootAxiomsMismatch, "root axioms differ from the reference"});
    for (const auto& [fp, se] : s.reference.lemmas) {
      if (!root_dom.lemmas.count(fp))
        out.push_back({DiagCode::RootLemmasMissing,
                       "reference lemma '" + se.sentence.name + "' is missing from the roots"});
    }
  }

  // Support mapping for D.
  Diagnostics sup = check_support(a, s.supp);
  out.insert(out.end(), sup.begin(), sup.end());

  // Condition 3: every support is reachable into its lemma's location via a
  // morphism that fixes it. Skipped when no location mapping exists.
  if (!derived.loc) return out;
  for (const auto& [fp, se] : a.whole().lemmas) {
    Entity phi = Entity::of(se.sentence);
    const NodeId* at_phi = derived.loc->find(phi.key());
    if (!at_phi) continue;
    for (const auto& alias : se.names) {
      auto it = s.supp.entries.find(alias);
      if (it == s.supp.entries.end()) continue;
      for (const auto& ref : it->second) {
        auto psi = a.find_name_global(ref);
        if (!psi) {
          out.push_back({DiagCode::UnresolvedSupport,
                         "support '" + ref + "' of lemma '" + alias + "' names no entity"});
          continue;
        }
        const NodeId* at_psi = derived.loc->find(psi->key());
        if (!at_psi) continue;
        bool ok = false;
        for (const auto& m : a.reachable(*at_psi, *at_phi)) {
          if (map_entity(m, *psi).key() == psi->key()) {
            ok = true;
            break;
          }
        }
        if (!ok)
          out.push_back({DiagCode::SupportPathMissing,
                         "no path from " + *at_psi + " to " + *at_phi + " fixes support '" + ref +
                             "' of lemma '" + alias + "'"});
      }
    }
  }
  return out;
}

std::pair<int, int> count_local_sentences(const DevelopmentGraph& g) {
  int ax = 0, lem = 0;
  for (const auto& [id, n] : g.nodes) {
    ax += static_cast<int>(n.axioms.size());
    lem += static_cast<int>(n.lemmas.size());
  }
  return {ax, lem};
}

}  // namespace theoryforge::dg
