#include "theoryforge/dot.hpp"

#include <sstream>

namespace theoryforge::dot {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string morphism_label(const fol::SignatureMorphism& m) {
  std::string out;
  auto dump = [&](const std::map<std::string, std::string>& entries) {
    for (const auto& [k, v] : entries) {
      if (!out.empty()) out += ",";
      out += k + "→" + v;
    }
  };
  dump(m.functions());
  dump(m.predicates());
  return out;
}

}  // namespace

std::string export_dot(const dg::Structuring& s) {
  std::ostringstream os;
  os << "digraph development_graph {\n";
  os << "  node [shape=box];\n";
  for (const auto& [id, n] : s.graph.nodes) {
    bool factor = s.graph.links_into(id).empty();
    if (factor) {
      auto out = s.graph.links_from(id);
      factor = out.size() >= 2;
      for (const auto* l : out)
        if (l->morphism.is_identity()) factor = false;
    }
    os << "  \"" << escape(id) << "\" [label=\"" << escape(id) << "\\n" << n.sig.size() << "/"
       << n.axioms.size() << "/" << n.lemmas.size() << "\"";
    if (factor) os << ", style=filled, fillcolor=orange";
    os << "];\n";
  }
  for (const auto& l : s.graph.links) {
    os << "  \"" << escape(l.source) << "\" -> \"" << escape(l.target) << "\"";
    if (!l.morphism.is_identity()) os << " [label=\"" << escape(morphism_label(l.morphism)) << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace theoryforge::dot
