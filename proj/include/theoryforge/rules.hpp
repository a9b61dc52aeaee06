#ifndef THEORYFORGE_RULES_HPP
#define THEORYFORGE_RULES_HPP

// The structuring-preserving transformation rules: horizontal and vertical
// split, vertical merge, factorization, transitive enrichment, and link
// removal. Every rule validates its preconditions and refuses otherwise.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theoryforge/devgraph.hpp"

namespace theoryforge::rules {

struct PreconditionError : std::runtime_error {
  std::string clause;
  PreconditionError(const std::string& rule, const std::string& clause)
      : std::runtime_error(rule + ": precondition failed: " + clause), clause(clause) {}
};

struct NotRemovableError : std::runtime_error {
  std::vector<int> conditions;  // failed condition indices (1..3)
  std::string witness;
  NotRemovableError(std::vector<int> conds, const std::string& witness);
};

// One part of a partitioning: local content destined for a new node.
struct LocalContent {
  fol::SymbolSet sig;
  std::vector<fol::NamedSentence> axioms;
  std::vector<fol::NamedSentence> lemmas;

  bool empty() const { return sig.empty() && axioms.empty() && lemmas.empty(); }
  dg::Domain domain() const;
};

// True iff every lemma of the part is supported, within the node's local
// domain, only by entities in the same part. Throws PreconditionError if the
// part is not a subset of the node's local domain.
bool lemma_independent(const dg::Structuring& s, const dg::NodeId& node, const LocalContent& part);

// Replaces the node by one sibling per part. Incoming links are duplicated to
// every sibling; outgoing links are re-sourced with the morphism restricted
// to the sibling's global signature.
dg::Structuring horizontal_split(const dg::Structuring& s, const dg::NodeId& node,
                                 const std::vector<LocalContent>& parts,
                                 std::vector<dg::NodeId> part_ids = {});

// Replaces the node by lower -> id -> upper; incoming links move to the lower
// node, outgoing links to the upper.
dg::Structuring vertical_split(const dg::Structuring& s, const dg::NodeId& node,
                               const LocalContent& lower, const LocalContent& upper,
                               dg::NodeId lower_id = "", dg::NodeId upper_id = "");

// Inverse of a vertical split: n1's only outgoing links are identity links to
// n2; the merged node keeps n2's id.
dg::Structuring vertical_merge(const dg::Structuring& s, const dg::NodeId& n1, const dg::NodeId& n2);

// A shared import of the factorization: K_i with its morphism into the factor
// world (sigma_i) and the designated existing link onto each member.
struct ImportSpec {
  dg::NodeId source;
  fol::SignatureMorphism sigma;       // sigma_i : K_i -> N
  std::map<dg::NodeId, int> member_links;  // member id -> designated link id
};

struct FactorizationCandidate {
  std::vector<dg::NodeId> members;                       // M_1..M_p, p >= 2
  std::vector<ImportSpec> imports;                       // K_1..K_n
  LocalContent content;                                  // fresh factor content
  std::vector<fol::SignatureMorphism> instance_morphisms;  // theta_j per member
  dg::SupportMapping factor_support;                     // Supp_N
  dg::NodeId factor_id;                                  // optional; generated if empty
  std::vector<dg::NodeId> instance_ids;                  // optional; generated if empty
};

// Extracts the candidate's fresh content into a factor node and re-derives
// each member as an instance of it.
dg::Structuring factorize(const dg::Structuring& s, const FactorizationCandidate& c);

// Adds the shortcut link k ->sigma n for an existing composite path morphism.
// Throws PreconditionError("no such path") otherwise.
dg::Structuring transitive_enrich(const dg::Structuring& s, const dg::NodeId& k,
                                  const dg::NodeId& n, const fol::SignatureMorphism& sigma);

struct RemovalCheck {
  bool removable = false;
  std::vector<int> failed_conditions;
  std::string witness;
};
RemovalCheck check_removable(const dg::Structuring& s, int link_id);

// Short-circuiting variant for scans over many candidate links; `before` is
// an analysis of s.graph shared across the scan.
bool quick_removable(const dg::Structuring& s, const dg::Analysis& before, int link_id);

// Deletes a removable link; loc and supp are unchanged. Throws
// NotRemovableError with the failing condition indices.
dg::Structuring remove_link(const dg::Structuring& s, int link_id);

}  // namespace theoryforge::rules

#endif
