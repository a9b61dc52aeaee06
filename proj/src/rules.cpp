#include "theoryforge/rules.hpp"

#include <algorithm>
#include <sstream>

namespace theoryforge::rules {

using dg::Analysis;
using dg::DevelopmentGraph;
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
using fol::SymbolSet;

NotRemovableError::NotRemovableError(std::vector<int> conds, const std::string& witness)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "link not removable; failed condition(s):";
        for (int c : conds) os << " " << c;
        if (!witness.empty()) os << " (" << witness << ")";
        return os.str();
      }()),
      conditions(std::move(conds)),
      witness(witness) {}

Domain LocalContent::domain() const {
  Domain d;
  for (const auto& s : sig) d.insert_symbol(s);
  for (const auto& s : axioms) d.insert_sentence(s);
  for (const auto& s : lemmas) d.insert_sentence(s);
  return d;
}

namespace {

Node node_from_content(NodeId id, const LocalContent& c) {
  Node n;
  n.id = std::move(id);
  n.sig = c.sig;
  n.axioms = c.axioms;
  n.lemmas = c.lemmas;
  n.normalize();
  return n;
}

std::set<EntityKey> keys_of(const Domain& d) {
  std::set<EntityKey> out;
  for (const auto& e : d.entities()) out.insert(e.key());
  return out;
}

const Node& node_or_throw(const Structuring& s, const NodeId& id) {
  auto it = s.graph.nodes.find(id);
  if (it == s.graph.nodes.end()) throw dg::UnknownNodeError(id);
  return it->second;
}

// Partitioning invariants: pairwise disjoint, union equals the local domain,
// every part non-empty.
void check_partitioning(const char* rule, const Node& node, const std::vector<LocalContent>& parts,
                        size_t min_parts) {
  if (parts.size() < min_parts)
    throw PreconditionError(rule, "partitioning needs at least " + std::to_string(min_parts) + " parts");
  std::set<EntityKey> seen;
  size_t total = 0;
  for (const auto& p : parts) {
    if (p.empty()) throw PreconditionError(rule, "empty part");
    auto ks = keys_of(p.domain());
    total += ks.size();
    for (const auto& k : ks) {
      if (!seen.insert(k).second) throw PreconditionError(rule, "parts overlap");
    }
  }
  auto local = keys_of(Analysis::local_domain(node));
  if (seen != local || total != local.size())
    throw PreconditionError(rule, "parts do not partition the local domain");
}

// New node validity: consistent global signature and every local sentence's
// symbols declared in it.
void check_new_node_wellformed(const char* rule, const Analysis& a, const NodeId& id) {
  const Domain& d = a.domain(id);
  if (!fol::signature_consistent(d.sig))
    throw PreconditionError(rule, "global signature of " + id + " has an arity clash");
  const Node& n = a.graph().nodes.at(id);
  auto check = [&](const std::vector<NamedSentence>& side) {
    for (const auto& s : side) {
      for (const auto& sym : s.symbols) {
        if (!d.sig.count(sym))
          throw PreconditionError(rule, "sentence '" + s.name + "' of " + id + " uses undeclared " +
                                            to_string(sym));
      }
    }
  };
  check(n.axioms);
  check(n.lemmas);
}

SignatureMorphism normalized(const SignatureMorphism& m) {
  // add() already drops identity entries; reconstructing normalizes inputs
  // built via of().
  SignatureMorphism out;
  for (const auto& [k, v] : m.functions()) out.add(fol::SymbolKind::Function, k, v);
  for (const auto& [k, v] : m.predicates()) out.add(fol::SymbolKind::Predicate, k, v);
  return out;
}

}  // namespace

bool lemma_independent(const Structuring& s, const NodeId& node, const LocalContent& part) {
  const Node& n = node_or_throw(s, node);
  Domain local = Analysis::local_domain(n);
  Domain part_dom = part.domain();
  for (const auto& e : part_dom.entities()) {
    if (!local.contains(e))
      throw PreconditionError("lemma_independent", "part is not a subset of the local domain");
  }
  // Local sentence names of the node and of the part.
  auto names_of = [](const Domain& d) {
    std::set<std::string> out;
    for (const auto& [fp, se] : d.axioms) out.insert(se.names.begin(), se.names.end());
    for (const auto& [fp, se] : d.lemmas) out.insert(se.names.begin(), se.names.end());
    return out;
  };
  std::set<std::string> local_names = names_of(local);
  std::set<std::string> part_names = names_of(part_dom);
  for (const auto& lem : part.lemmas) {
    for (const auto& ref : s.supp.supports_of(lem.name)) {
      if (local_names.count(ref) && !part_names.count(ref)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Structuring horizontal_split(const Structuring& s, const NodeId& node,
                             const std::vector<LocalContent>& parts, std::vector<NodeId> part_ids) {
  const char* rule = "horizontal_split";
  const Node& n = node_or_throw(s, node);
  check_partitioning(rule, n, parts, 2);
  for (const auto& p : parts) {
    if (!lemma_independent(s, node, p))
      throw PreconditionError(rule, "a part is not lemma independent");
  }
  // loc^-1(N) = dom^N: no link into the node provides anything located here.
  auto local_keys = keys_of(Analysis::local_domain(n));
  for (const auto& [k, at] : s.loc.at) {
    if (at == node && !local_keys.count(k))
      throw PreconditionError(rule, "a link-provided entity is located at " + node);
  }

  Structuring out = s;
  out.graph.nodes.erase(node);
  std::vector<NodeId> ids;
  for (size_t i = 0; i < parts.size(); ++i) {
    NodeId id = i < part_ids.size() && !part_ids[i].empty()
                    ? part_ids[i]
                    : node + "_p" + std::to_string(i + 1);
    id = out.graph.fresh_node_id(id);
    out.graph.nodes.emplace(id, node_from_content(id, parts[i]));
    ids.push_back(std::move(id));
  }

  // Rewire: keep unrelated links, duplicate incoming, re-source outgoing with
  // restricted morphisms (added after sibling signatures are known).
  std::vector<Link> old_links = out.graph.links;
  out.graph.links.clear();
  std::vector<Link> outgoing;
  for (const auto& l : old_links) {
    if (l.source != node && l.target != node) {
      out.graph.links.push_back(l);
    } else if (l.target == node) {
      for (const auto& id : ids) out.graph.add_link(l.source, id, l.morphism);
    } else {
      outgoing.push_back(l);
    }
  }
  {
    Analysis partial(out.graph);
    std::map<NodeId, SymbolSet> sibling_sigs;
    for (const auto& id : ids) sibling_sigs[id] = partial.domain(id).sig;
    for (const auto& l : outgoing) {
      for (const auto& id : ids)
        out.graph.add_link(id, l.target, l.morphism.restricted_to(sibling_sigs[id]));
    }
  }

  for (size_t i = 0; i < parts.size(); ++i) {
    for (const auto& e : parts[i].domain().entities()) out.loc.at[e.key()] = ids[i];
  }

  Analysis a(out.graph);
  for (const auto& id : ids) check_new_node_wellformed(rule, a, id);
  return out;
}

// ---------------------------------------------------------------------------

Structuring vertical_split(const Structuring& s, const NodeId& node, const LocalContent& lower,
                           const LocalContent& upper, NodeId lower_id, NodeId upper_id) {
  const char* rule = "vertical_split";
  const Node& n = node_or_throw(s, node);
  check_partitioning(rule, n, {lower, upper}, 2);
  if (!lemma_independent(s, node, lower))
    throw PreconditionError(rule, "lower part is not lemma independent");

  Structuring out = s;
  out.graph.nodes.erase(node);
  if (lower_id.empty()) lower_id = node + "_lo";
  if (upper_id.empty()) upper_id = node + "_hi";
  lower_id = out.graph.fresh_node_id(lower_id);
  out.graph.nodes.emplace(lower_id, node_from_content(lower_id, lower));
  upper_id = out.graph.fresh_node_id(upper_id);
  out.graph.nodes.emplace(upper_id, node_from_content(upper_id, upper));

  std::vector<Link> old_links = out.graph.links;
  out.graph.links.clear();
  for (const auto& l : old_links) {
    if (l.source != node && l.target != node) {
      out.graph.links.push_back(l);
    } else if (l.target == node) {
      out.graph.add_link(l.source, lower_id, l.morphism);
    } else {
      out.graph.add_link(upper_id, l.target, l.morphism);
    }
  }
  out.graph.add_link(lower_id, upper_id, SignatureMorphism::identity());

  // loc': the upper part's own content goes up, everything else that lived at
  // the node (lower content and link-provided entities) goes down.
  auto upper_keys = keys_of(upper.domain());
  for (auto& [k, at] : out.loc.at) {
    if (at == node) at = upper_keys.count(k) ? upper_id : lower_id;
  }

  Analysis a(out.graph);
  check_new_node_wellformed(rule, a, lower_id);
  check_new_node_wellformed(rule, a, upper_id);
  return out;
}

// ---------------------------------------------------------------------------

Structuring vertical_merge(const Structuring& s, const NodeId& n1, const NodeId& n2) {
  const char* rule = "vertical_merge";
  const Node& a1 = node_or_throw(s, n1);
  const Node& a2 = node_or_throw(s, n2);
  if (n1 == n2) throw PreconditionError(rule, "nodes coincide");

  bool has_id_link = false;
  for (const auto* l : s.graph.links_from(n1)) {
    if (l->target != n2) throw PreconditionError(rule, n1 + " has an outgoing link not targeting " + n2);
    if (!l->morphism.is_identity())
      throw PreconditionError(rule, "link " + n1 + " -> " + n2 + " is not an identity link");
    has_id_link = true;
  }
  if (!has_id_link) throw PreconditionError(rule, "no identity link " + n1 + " -> " + n2);

  Structuring out = s;
  Node merged;
  merged.id = n2;
  merged.sig = a2.sig;
  try {
    fol::merge_symbols(merged.sig, a1.sig);
  } catch (const fol::ArityClashError& e) {
    throw PreconditionError(rule, e.what());
  }
  merged.axioms = a2.axioms;
  merged.lemmas = a2.lemmas;
  std::set<std::string> names;
  for (const auto& x : merged.axioms) names.insert(x.name);
  for (const auto& x : merged.lemmas) names.insert(x.name);
  for (const auto& x : a1.axioms) {
    if (!names.insert(x.name).second) throw PreconditionError(rule, "sentence name collision '" + x.name + "'");
    merged.axioms.push_back(x);
  }
  for (const auto& x : a1.lemmas) {
    if (!names.insert(x.name).second) throw PreconditionError(rule, "sentence name collision '" + x.name + "'");
    merged.lemmas.push_back(x);
  }
  merged.normalize();

  out.graph.nodes.erase(n1);
  out.graph.nodes.erase(n2);
  out.graph.nodes.emplace(n2, std::move(merged));

  std::vector<Link> old_links = out.graph.links;
  out.graph.links.clear();
  for (const auto& l : old_links) {
    if (l.source == n1 && l.target == n2) continue;  // the merged identity link(s)
    NodeId src = l.source == n1 ? n2 : l.source;
    NodeId tgt = l.target == n1 ? n2 : l.target;
    out.graph.add_link(src, tgt, l.morphism);
  }

  for (auto& [k, at] : out.loc.at) {
    if (at == n1) at = n2;
  }

  auto derived = compute_location(out.graph);
  if (!derived.loc)
    throw PreconditionError(rule, "merge breaks provider uniqueness: " + dg::render(derived.diags));
  return out;
}

// ---------------------------------------------------------------------------

Structuring factorize(const Structuring& s, const FactorizationCandidate& c) {
  const char* rule = "factorize";
  const size_t p = c.members.size();
  if (p < 2) throw PreconditionError(rule, "needs at least two members");
  if (c.instance_morphisms.size() != p)
    throw PreconditionError(rule, "one instance morphism per member required");
  {
    std::set<NodeId> m(c.members.begin(), c.members.end());
    if (m.size() != p) throw PreconditionError(rule, "duplicate members");
  }
  for (const auto& id : c.members) {
    const Node& m = node_or_throw(s, id);
    if (m.empty()) throw PreconditionError(rule, "member " + id + " is empty");
  }
  if (c.content.empty()) throw PreconditionError(rule, "factor content is empty");

  std::set<NodeId> member_set(c.members.begin(), c.members.end());
  for (const auto& l : s.graph.links) {
    if (member_set.count(l.source) && member_set.count(l.target))
      throw PreconditionError(rule, "members are interlinked: " + l.source + " -> " + l.target);
  }

  Analysis a(s.graph);
  const Domain& whole = a.whole();

  // Freshness of the factor content against Dom_D.
  Domain content_dom;
  try {
    content_dom = c.content.domain();
  } catch (const fol::ArityClashError& e) {
    throw PreconditionError(rule, std::string("factor content inconsistent: ") + e.what());
  }
  for (const auto& d : c.content.sig) {
    for (const auto& existing : whole.sig) {
      if (existing.name == d.name && existing.kind == d.kind)
        throw PreconditionError(rule, "factor symbol " + to_string(d) + " is not fresh");
    }
  }
  auto check_fresh_sentence = [&](const NamedSentence& x) {
    if (whole.contains(Entity::of(x)))
      throw PreconditionError(rule, "factor sentence '" + x.name + "' duplicates an existing entity");
    if (whole.find_name(x.name))
      throw PreconditionError(rule, "factor sentence name '" + x.name + "' is not fresh");
  };
  for (const auto& x : c.content.axioms) check_fresh_sentence(x);
  for (const auto& x : c.content.lemmas) check_fresh_sentence(x);

  // Designated import links and the morphism compatibility conditions.
  std::set<int> designated;
  std::vector<std::map<NodeId, SignatureMorphism>> sigma_ij(c.imports.size());
  for (size_t i = 0; i < c.imports.size(); ++i) {
    const auto& imp = c.imports[i];
    node_or_throw(s, imp.source);
    if (member_set.count(imp.source)) throw PreconditionError(rule, "import source is a member");
    for (const auto& mid : c.members) {
      auto it = imp.member_links.find(mid);
      if (it == imp.member_links.end())
        throw PreconditionError(rule, "import " + imp.source + " has no designated link to " + mid);
      const Link* l = s.graph.find_link(it->second);
      if (!l || l->source != imp.source || l->target != mid)
        throw PreconditionError(rule, "designated link mismatch for " + imp.source + " -> " + mid);
      designated.insert(l->id);
      sigma_ij[i][mid] = l->morphism;
    }
    for (const auto& e : a.domain(imp.source).entities()) {
      Entity img = map_entity(imp.sigma, e);
      if (!(img.key() == e.key()) && whole.contains(img))
        throw PreconditionError(rule, "sigma_" + std::to_string(i + 1) + " image of " + e.describe() +
                                          " is neither fixed nor fresh");
      for (size_t j = 0; j < p; ++j) {
        Entity via_factor = map_entity(c.instance_morphisms[j], img);
        Entity direct = map_entity(sigma_ij[i].at(c.members[j]), e);
        if (!(via_factor.key() == direct.key()))
          throw PreconditionError(rule, "theta_" + std::to_string(j + 1) + " . sigma_" +
                                            std::to_string(i + 1) + " differs from the designated link on " +
                                            e.describe());
      }
    }
  }

  // Coverage: sig^{M_j} <= theta_j(sig) <= Sig(M_j), same for axioms.
  for (size_t j = 0; j < p; ++j) {
    const Node& m = s.graph.nodes.at(c.members[j]);
    const Domain& mdom = a.domain(c.members[j]);
    const auto& theta = c.instance_morphisms[j];
    SymbolSet mapped_sig = fol::map_symbols(theta, c.content.sig);
    for (const auto& d : m.sig) {
      if (!mapped_sig.count(d))
        throw PreconditionError(rule, "local symbol " + to_string(d) + " of " + c.members[j] +
                                          " is not covered by theta(sig)");
    }
    for (const auto& d : mapped_sig) {
      if (!mdom.sig.count(d))
        throw PreconditionError(rule, "theta(sig) image " + to_string(d) + " is not visible in " +
                                          c.members[j]);
    }
    std::set<std::string> mapped_ax_keys;
    for (const auto& x : c.content.axioms) {
      NamedSentence img = map_sentence(theta, x);
      mapped_ax_keys.insert(img.alpha_fp);
      if (!mdom.axioms.count(img.alpha_fp))
        throw PreconditionError(rule, "theta(ax) image of '" + x.name + "' is not visible in " +
                                          c.members[j]);
    }
    for (const auto& x : m.axioms) {
      if (!mapped_ax_keys.count(x.alpha_fp))
        throw PreconditionError(rule, "local axiom '" + x.name + "' of " + c.members[j] +
                                          " is not covered by theta(ax)");
    }
  }

  // Lemma conditions.
  for (const auto& x : c.content.lemmas) {
    bool placed = false;
    std::set<std::string> images;
    for (size_t j = 0; j < p; ++j) {
      NamedSentence img = map_sentence(c.instance_morphisms[j], x);
      if (!images.insert(img.alpha_fp).second)
        throw PreconditionError(rule, "theta images of factor lemma '" + x.name + "' coincide");
      const Node& m = s.graph.nodes.at(c.members[j]);
      for (const auto& ml : m.lemmas) {
        if (ml.alpha_fp == img.alpha_fp) placed = true;
      }
      Entity img_e = Entity::of(img);
      if (whole.contains(img_e)) {
        const NodeId* at = s.loc.find(img_e.key());
        if (!at || *at != c.members[j])
          throw PreconditionError(rule, "theta image of factor lemma '" + x.name +
                                            "' is located outside " + c.members[j]);
      }
    }
    if (!placed)
      throw PreconditionError(rule, "factor lemma '" + x.name + "' maps into no member's local lemmas");
  }

  // Supp_N: a support mapping over the factor content plus mapped imports.
  {
    Domain support_world = content_dom;
    for (size_t i = 0; i < c.imports.size(); ++i)
      for (const auto& e : a.domain(c.imports[i].source).entities())
        support_world.insert(map_entity(c.imports[i].sigma, e));
    std::set<std::string> lem_names;
    for (const auto& x : c.content.lemmas) lem_names.insert(x.name);
    for (const auto& [lem, refs] : c.factor_support.entries) {
      if (!lem_names.count(lem))
        throw PreconditionError(rule, "factor support keyed by non-factor lemma '" + lem + "'");
      for (const auto& ref : refs) {
        if (!support_world.find_name(ref))
          throw PreconditionError(rule, "factor support '" + ref + "' of '" + lem +
                                            "' is not visible at the factor");
      }
    }
    if (!c.factor_support.acyclic()) throw PreconditionError(rule, "factor support is cyclic");
  }

  // Construction.
  Structuring out = s;
  NodeId factor_id = c.factor_id.empty() ? "factor" : c.factor_id;
  factor_id = out.graph.fresh_node_id(factor_id);

  std::vector<NodeId> instance_ids;
  for (size_t j = 0; j < p; ++j) {
    NodeId want = j < c.instance_ids.size() && !c.instance_ids[j].empty() ? c.instance_ids[j]
                                                                          : c.members[j] + "_inst";
    instance_ids.push_back(want);
  }

  std::vector<Node> instance_nodes;
  for (size_t j = 0; j < p; ++j) {
    const Node& m = out.graph.nodes.at(c.members[j]);
    std::set<std::string> factored;
    for (const auto& x : c.content.lemmas)
      factored.insert(map_sentence(c.instance_morphisms[j], x).alpha_fp);
    Node inst;
    inst.id = instance_ids[j];
    for (const auto& ml : m.lemmas)
      if (!factored.count(ml.alpha_fp)) inst.lemmas.push_back(ml);
    inst.normalize();
    instance_nodes.push_back(std::move(inst));
  }

  for (const auto& mid : c.members) out.graph.nodes.erase(mid);
  out.graph.nodes.emplace(factor_id, node_from_content(factor_id, c.content));
  for (size_t j = 0; j < p; ++j) {
    instance_ids[j] = out.graph.fresh_node_id(instance_ids[j]);
    instance_nodes[j].id = instance_ids[j];
    out.graph.nodes.emplace(instance_ids[j], std::move(instance_nodes[j]));
  }
  std::map<NodeId, NodeId> member_to_instance;
  for (size_t j = 0; j < p; ++j) member_to_instance[c.members[j]] = instance_ids[j];

  std::vector<Link> old_links = out.graph.links;
  out.graph.links.clear();
  for (const auto& l : old_links) {
    if (designated.count(l.id)) continue;
    bool src_member = member_set.count(l.source);
    bool tgt_member = member_set.count(l.target);
    if (!src_member && !tgt_member) {
      out.graph.links.push_back(l);
    } else if (tgt_member) {
      out.graph.add_link(l.source, member_to_instance[l.target], l.morphism);
    } else {
      out.graph.add_link(member_to_instance[l.source], l.target, l.morphism);
    }
  }
  for (const auto& imp : c.imports) out.graph.add_link(imp.source, factor_id, imp.sigma);
  for (size_t j = 0; j < p; ++j)
    out.graph.add_link(factor_id, instance_ids[j], c.instance_morphisms[j]);

  for (const auto& [lem, refs] : c.factor_support.entries) {
    auto& slot = out.supp.entries[lem];
    slot.insert(refs.begin(), refs.end());
  }

  // The covered member sentences are now provided as theta images carrying
  // derived names; the name-level support bookkeeping follows the entities.
  {
    std::map<std::string, std::string> renamed;
    for (size_t j = 0; j < p; ++j) {
      const Node& m = s.graph.nodes.at(c.members[j]);
      auto collect = [&](const std::vector<NamedSentence>& content_side,
                         const std::vector<NamedSentence>& member_side) {
        for (const auto& x : content_side) {
          NamedSentence img = map_sentence(c.instance_morphisms[j], x);
          for (const auto& orig : member_side) {
            if (orig.role == img.role && orig.alpha_fp == img.alpha_fp && orig.name != img.name)
              renamed[orig.name] = img.name;
          }
        }
      };
      collect(c.content.axioms, m.axioms);
      collect(c.content.lemmas, m.lemmas);
    }
    if (!renamed.empty()) {
      dg::SupportMapping rewritten;
      for (const auto& [key, refs] : out.supp.entries) {
        auto kit = renamed.find(key);
        auto& slot = rewritten.entries[kit == renamed.end() ? key : kit->second];
        for (const auto& r : refs) {
          auto rit = renamed.find(r);
          slot.insert(rit == renamed.end() ? r : rit->second);
        }
      }
      out.supp = std::move(rewritten);
    }
  }

  // loc': fresh factor content (and fresh sigma images) at the factor node,
  // everything provided at an instance node there, the rest untouched.
  Analysis post(out.graph);
  std::set<EntityKey> import_keys;
  for (const auto& imp : c.imports)
    for (const auto& k : keys_of(post.domain(imp.source))) import_keys.insert(k);
  for (const auto& k : keys_of(post.domain(factor_id))) {
    if (!import_keys.count(k)) out.loc.at[k] = factor_id;
  }
  for (size_t j = 0; j < p; ++j) {
    for (const auto& k : post.provided_at(instance_ids[j])) out.loc.at[k] = instance_ids[j];
  }
  for (auto& [k, at] : out.loc.at) {
    if (member_set.count(at))
      throw PreconditionError(rule, "an entity remained located at a removed member node");
  }
  return out;
}

// ---------------------------------------------------------------------------

Structuring transitive_enrich(const Structuring& s, const NodeId& k, const NodeId& n,
                              const SignatureMorphism& sigma) {
  const char* rule = "transitive_enrich";
  node_or_throw(s, k);
  node_or_throw(s, n);
  if (k == n) throw PreconditionError(rule, "no such path (self link)");
  SignatureMorphism want = normalized(sigma);
  bool found = false;
  for (const auto& m : dg::reachable_morphisms(s.graph, k, n)) {
    if (m == want) {
      found = true;
      break;
    }
  }
  if (!found) throw PreconditionError(rule, "no such path");
  Structuring out = s;
  out.graph.add_link(k, n, want);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// fast == true stops at the first failed condition, cheapest checks first;
// the full variant enumerates every failed condition for diagnostics.
RemovalCheck check_removable_impl(const Structuring& s, const Analysis& before, int link_id,
                                  bool fast) {
  RemovalCheck res;
  const Link* l = s.graph.find_link(link_id);
  if (!l) {
    res.failed_conditions = {1, 2, 3};
    res.witness = "no such link";
    return res;
  }

  Structuring trimmed = s;
  trimmed.graph.remove_link(link_id);

  Analysis after(trimmed.graph);

  if (fast) {
    // Cheap gate: local sentences must keep their symbols (condition 3a).
    for (const auto& [nid, node] : trimmed.graph.nodes) {
      const Domain& d = after.domain(nid);
      for (const auto& side : {&node.axioms, &node.lemmas}) {
        for (const auto& x : *side) {
          for (const auto& sym : x.symbols) {
            if (!d.sig.count(sym)) {
              res.failed_conditions.push_back(3);
              return res;
            }
          }
        }
      }
    }
  }

  // (1) every exclusive link-provision survives, and the location mapping is
  // preserved: no entity acquires a second providing node because a
  // predecessor's domain shrank. The latter is needed for Def. 2(3) even
  // though Def. 5 does not spell it out.
  for (const auto& [nid, _] : s.graph.nodes) {
    const Node& node = s.graph.nodes.at(nid);
    Domain local = Analysis::local_domain(node);
    const auto& keys_before = before.provided_at(nid);
    for (const auto& k : keys_before) {
      if (local.contains_key(k)) continue;
      if (before.providing_link_count(k) != 1) continue;  // not exclusive
      if (!after.provided_at(nid).count(k)) {
        res.failed_conditions.push_back(1);
        res.witness = "exclusive provision lost at " + nid;
        break;
      }
    }
    if (res.failed_conditions.empty()) {
      for (const auto& k : after.provided_at(nid)) {
        if (!keys_before.count(k)) {
          res.failed_conditions.push_back(1);
          res.witness = "removal would make " + nid + " a second provider";
          break;
        }
      }
    }
    if (!res.failed_conditions.empty()) break;
  }
  if (fast && !res.failed_conditions.empty()) return res;

  // (2) root reachability with identical morphisms is preserved.
  {
    auto roots_before = before.roots();
    auto roots_after = after.roots();
    bool failed = false;
    for (const auto& [nid, _] : s.graph.nodes) {
      for (const auto& r : roots_before) {
        for (const auto& m : before.reachable(nid, r)) {
          bool kept = false;
          for (const auto& r2 : roots_after) {
            const auto& ms = after.reachable(nid, r2);
            if (std::find(ms.begin(), ms.end(), m) != ms.end()) {
              kept = true;
              break;
            }
          }
          if (!kept) {
            failed = true;
            res.witness = "morphism " + m.to_string() + " from " + nid + " reaches no root";
            break;
          }
        }
        if (failed) break;
      }
      if (failed) break;
    }
    if (failed) res.failed_conditions.push_back(2);
  }
  if (fast && !res.failed_conditions.empty()) return res;

  // (3) local signatures and supports stay visible with fixing paths.
  {
    bool failed = false;
    for (const auto& [nid, node] : trimmed.graph.nodes) {
      const Domain& d = after.domain(nid);
      auto check_side = [&](const std::vector<NamedSentence>& side) {
        for (const auto& x : side)
          for (const auto& sym : x.symbols)
            if (!d.sig.count(sym)) {
              failed = true;
              res.witness = "symbol " + to_string(sym) + " lost under " + nid;
            }
      };
      check_side(node.axioms);
      check_side(node.lemmas);
      if (failed) break;
    }
    if (!failed && !check_support(after, trimmed.supp).empty()) {
      failed = true;
      res.witness = "a support became invisible";
    }
    if (!failed) {
      // Def. 4(3) re-checked on D'.
      for (const auto& [fp, se] : after.whole().lemmas) {
        Entity phi = Entity::of(se.sentence);
        const NodeId* at_phi = trimmed.loc.find(phi.key());
        if (!at_phi) continue;
        for (const auto& alias : se.names) {
          auto it = trimmed.supp.entries.find(alias);
          if (it == trimmed.supp.entries.end()) continue;
          for (const auto& ref : it->second) {
            auto psi = after.find_name_global(ref);
            if (!psi) continue;
            const NodeId* at_psi = trimmed.loc.find(psi->key());
            if (!at_psi) continue;
            bool ok = false;
            for (const auto& m : after.reachable(*at_psi, *at_phi)) {
              if (map_entity(m, *psi).key() == psi->key()) {
                ok = true;
                break;
              }
            }
            if (!ok) {
              failed = true;
              res.witness = "support '" + ref + "' of '" + alias + "' lost its fixing path";
              break;
            }
          }
          if (failed) break;
        }
        if (failed) break;
      }
    }
    if (failed) res.failed_conditions.push_back(3);
  }

  res.removable = res.failed_conditions.empty();
  return res;
}

}  // namespace

RemovalCheck check_removable(const Structuring& s, int link_id) {
  Analysis before(s.graph);
  return check_removable_impl(s, before, link_id, false);
}

bool quick_removable(const Structuring& s, const Analysis& before, int link_id) {
  return check_removable_impl(s, before, link_id, true).removable;
}

Structuring remove_link(const Structuring& s, int link_id) {
  RemovalCheck chk = check_removable(s, link_id);
  if (!chk.removable) throw NotRemovableError(chk.failed_conditions, chk.witness);
  Structuring out = s;
  out.graph.remove_link(link_id);
  return out;
}

}  // namespace theoryforge::rules
