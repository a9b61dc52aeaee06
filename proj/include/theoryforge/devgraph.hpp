#ifndef THEORYFORGE_DEVGRAPH_HPP
#define THEORYFORGE_DEVGRAPH_HPP

// Development graphs: nodes with local signature/axioms/lemmas, global
// definition links with signature morphisms, global reachability and domains,
// providing nodes, location mappings, support mappings, and the structuring
// invariant.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "theoryforge/fol.hpp"

namespace theoryforge::dg {

using NodeId = std::string;

struct UnknownNodeError : std::runtime_error {
  explicit UnknownNodeError(const NodeId& id) : std::runtime_error("unknown node '" + id + "'") {}
};

struct UnknownEntityError : std::runtime_error {
  explicit UnknownEntityError(const std::string& what)
      : std::runtime_error("unknown entity " + what) {}
};

// ---------------------------------------------------------------------------

struct Node {
  NodeId id;
  fol::SymbolSet sig;                       // sig^N
  std::vector<fol::NamedSentence> axioms;   // ax^N, sorted by name
  std::vector<fol::NamedSentence> lemmas;   // lem^N, sorted by name

  bool empty() const { return sig.empty() && axioms.empty() && lemmas.empty(); }
  void normalize();  // sort sentences by name
};

struct Link {
  int id = -1;
  NodeId source;
  NodeId target;
  fol::SignatureMorphism morphism;
};

struct DevelopmentGraph {
  std::map<NodeId, Node> nodes;
  std::vector<Link> links;
  int next_link_id = 0;

  int add_link(const NodeId& source, const NodeId& target, fol::SignatureMorphism m);
  void remove_link(int link_id);
  const Link* find_link(int link_id) const;
  std::vector<const Link*> links_into(const NodeId& n) const;
  std::vector<const Link*> links_from(const NodeId& n) const;
  NodeId fresh_node_id(const std::string& base) const;
};

// ---------------------------------------------------------------------------
// Entities: signature symbols and sentences. Sentence identity is the pair
// (role, alpha class); names ride along as aliases so that TSTP support
// references stay resolvable.

struct EntityKey {
  int tag = 0;  // 0 = symbol, 1 = sentence
  std::string text;  // symbol name, or sentence alpha fingerprint
  int arity = 0;
  fol::SymbolKind sk = fol::SymbolKind::Function;
  fol::Role role = fol::Role::Axiom;

  friend bool operator==(const EntityKey&, const EntityKey&) = default;
  friend auto operator<=>(const EntityKey&, const EntityKey&) = default;
};

struct Entity {
  enum class Kind { Symbol, Sentence };
  Kind kind = Kind::Symbol;
  fol::SymbolDecl symbol;
  fol::NamedSentence sentence;

  static Entity of(const fol::SymbolDecl& s);
  static Entity of(const fol::NamedSentence& s);
  EntityKey key() const;
  std::string describe() const;
};

Entity map_entity(const fol::SignatureMorphism& sigma, const Entity& e);

struct SentenceEntity {
  fol::NamedSentence sentence;      // first-seen representative
  std::set<std::string> names;      // every name this entity is known under
};

// A set of entities split by kind. Sentences are keyed by alpha class.
struct Domain {
  fol::SymbolSet sig;
  std::map<std::string, SentenceEntity> axioms;  // key = alpha_fp
  std::map<std::string, SentenceEntity> lemmas;

  void insert_symbol(const fol::SymbolDecl& s) { sig.insert(s); }
  void insert_sentence(const fol::NamedSentence& s);
  void insert(const Entity& e);
  void merge(const Domain& other);
  bool contains(const Entity& e) const;
  bool contains_key(const EntityKey& k) const;
  size_t size() const { return sig.size() + axioms.size() + lemmas.size(); }
  bool empty() const { return size() == 0; }
  std::vector<Entity> entities() const;
  std::optional<Entity> find_name(const std::string& name) const;

  friend bool operator==(const Domain&, const Domain&);
};

// ---------------------------------------------------------------------------

struct SupportMapping {
  // lemma name -> names of supporting axioms/lemmas
  std::map<std::string, std::set<std::string>> entries;

  std::set<std::string> supports_of(const std::string& lemma) const;
  bool acyclic() const;
  // Names on a cycle, when one exists.
  std::optional<std::vector<std::string>> find_cycle() const;
};

struct LocationMapping {
  std::map<EntityKey, NodeId> at;

  const NodeId* find(const EntityKey& k) const;
  std::map<NodeId, std::set<EntityKey>> inverse() const;
};

struct Structuring {
  DevelopmentGraph graph;
  LocationMapping loc;
  SupportMapping supp;
  Domain reference;  // the (Sigma, Ax, Lem) triple being structured
};

// Single-node structuring over the given content; the reference triple is the
// content itself. The caller supplies an acyclic support mapping.
Structuring make_initial(Node node, SupportMapping supp);

// ---------------------------------------------------------------------------
// Diagnostics.

enum class DiagCode {
  CycleFound,
  DanglingLink,
  UndeclaredSymbol,
  SignatureArityClash,
  MultipleProviders,
  SpuriousNode,
  LocalNotLocated,
  SupportCycle,
  UnresolvedSupport,
  RootSignatureMismatch,
  RootAxiomsMismatch,
  RootLemmasMissing,
  SupportPathMissing,
  LocationDisagrees,
  EmptyGraph,
};

struct Diagnostic {
  DiagCode code;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_code(const Diagnostics& ds, DiagCode c);
std::string render(const Diagnostics& ds);

// ---------------------------------------------------------------------------
// Memoized views over one immutable graph.

class Analysis {
 public:
  explicit Analysis(const DevelopmentGraph& g);

  bool acyclic() const { return acyclic_; }
  // In link direction, import sources first; ties broken by the smallest
  // local entity name, then node id.
  const std::vector<NodeId>& topo_order() const;
  std::vector<NodeId> roots() const;

  static Domain local_domain(const Node& n);
  const Domain& domain(const NodeId& n) const;  // global domain
  const Domain& whole() const;                  // Dom_D
  std::optional<Entity> find_name_global(const std::string& name) const;

  // All morphisms sigma with from ->sigma to, per the inductive definition.
  const std::vector<fol::SignatureMorphism>& reachable(const NodeId& from, const NodeId& to) const;

  struct Provision {
    NodeId node;
    bool local = false;
    // (link id, preimage) pairs; exclusive iff a link is the only providing
    // link for the entity anywhere in the graph.
    std::vector<std::pair<int, Entity>> by_links;
  };
  // Every node where the entity is provided (Def. 1).
  std::vector<Provision> providers(const Entity& e) const;
  // Entity keys provided at node n.
  const std::set<EntityKey>& provided_at(const NodeId& n) const;
  // Total number of providing links for the key, across the whole graph.
  int providing_link_count(const EntityKey& k) const;

  const DevelopmentGraph& graph() const { return g_; }

 private:
  void ensure_domains() const;
  void ensure_provisions() const;

  const DevelopmentGraph& g_;
  bool acyclic_ = false;
  std::vector<NodeId> topo_;
  mutable bool domains_done_ = false;
  mutable std::map<NodeId, Domain> domains_;
  mutable Domain whole_;
  mutable std::map<std::pair<NodeId, NodeId>, std::vector<fol::SignatureMorphism>> reach_;
  mutable bool provisions_done_ = false;
  mutable std::map<NodeId, std::set<EntityKey>> provided_;
  mutable std::map<EntityKey, int> providing_links_;
};

// ---------------------------------------------------------------------------
// Operations.

std::set<NodeId> roots(const DevelopmentGraph& g);

std::vector<fol::SignatureMorphism> reachable_morphisms(const DevelopmentGraph& g,
                                                        const NodeId& from, const NodeId& to);

struct GlobalDomain {
  fol::SymbolSet sig;
  std::vector<fol::NamedSentence> axioms;
  std::vector<fol::NamedSentence> lemmas;
};
GlobalDomain global_domain(const DevelopmentGraph& g, const NodeId& n);

// Empty iff acyclic, all link endpoints exist, and every node is valid (all
// symbols of its global sentences declared in its global signature with a
// single arity).
Diagnostics validate_graph(const DevelopmentGraph& g);

struct LocationResult {
  std::optional<LocationMapping> loc;
  Diagnostics diags;
};
// The unique location mapping, when one exists (Def. 2).
LocationResult compute_location(const DevelopmentGraph& g);
LocationResult compute_location(const Analysis& a);

// Acyclicity plus per-node resolvability of every support reference.
Diagnostics check_support(const DevelopmentGraph& g, const SupportMapping& supp);
Diagnostics check_support(const Analysis& a, const SupportMapping& supp);

// The three structuring conditions of Def. 4.
Diagnostics check_structuring(const Structuring& s);

// Local axiom/lemma totals over all nodes (the evaluation counts).
std::pair<int, int> count_local_sentences(const DevelopmentGraph& g);

}  // namespace theoryforge::dg

#endif
