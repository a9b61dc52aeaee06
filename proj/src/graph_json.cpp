#include "theoryforge/graph_json.hpp"

#include <json.hpp>

#include "theoryforge/tstp.hpp"

namespace theoryforge::graph_json {

using nlohmann::json;

namespace {

json symbols_to_json(const fol::SymbolSet& sig) {
  json arr = json::array();
  for (const auto& d : sig) {
    arr.push_back({{"name", d.name},
                   {"arity", d.arity},
                   {"kind", d.kind == fol::SymbolKind::Predicate ? "predicate" : "function"}});
  }
  return arr;
}

json sentences_to_json(const std::vector<fol::NamedSentence>& side) {
  json arr = json::array();
  for (const auto& s : side) arr.push_back({{"name", s.name}, {"formula", tstp::print_fof(s.formula)}});
  return arr;
}

json domain_sentences_to_json(const std::map<std::string, dg::SentenceEntity>& side) {
  json arr = json::array();
  for (const auto& [fp, se] : side)
    arr.push_back({{"name", se.sentence.name}, {"formula", tstp::print_fof(se.sentence.formula)}});
  return arr;
}

json morphism_to_json(const fol::SignatureMorphism& m) {
  json fns = json::array(), preds = json::array();
  for (const auto& [k, v] : m.functions()) fns.push_back({k, v});
  for (const auto& [k, v] : m.predicates()) preds.push_back({k, v});
  return {{"functions", fns}, {"predicates", preds}};
}

fol::SymbolSet symbols_from_json(const json& arr) {
  if (!arr.is_array()) throw SchemaError("signature must be an array");
  fol::SymbolSet out;
  for (const auto& e : arr) {
    if (!e.is_object() || !e.contains("name") || !e.contains("arity") || !e.contains("kind"))
      throw SchemaError("bad symbol entry");
    std::string kind = e["kind"].get<std::string>();
    if (kind != "function" && kind != "predicate") throw SchemaError("bad symbol kind '" + kind + "'");
    out.insert(fol::SymbolDecl{e["name"].get<std::string>(), e["arity"].get<int>(),
                               kind == "predicate" ? fol::SymbolKind::Predicate
                                                   : fol::SymbolKind::Function});
  }
  return out;
}

std::vector<fol::NamedSentence> sentences_from_json(const json& arr, fol::Role role) {
  if (!arr.is_array()) throw SchemaError("sentence list must be an array");
  std::vector<fol::NamedSentence> out;
  for (const auto& e : arr) {
    if (!e.is_object() || !e.contains("name") || !e.contains("formula"))
      throw SchemaError("bad sentence entry");
    fol::FormulaPtr f;
    try {
      f = tstp::parse_formula(e["formula"].get<std::string>());
    } catch (const tstp::ParseError& pe) {
      throw SchemaError(std::string("unparsable formula: ") + pe.what());
    }
    out.push_back(fol::NamedSentence::make(e["name"].get<std::string>(), role, f));
  }
  return out;
}

fol::SignatureMorphism morphism_from_json(const json& o) {
  if (!o.is_object() || !o.contains("functions") || !o.contains("predicates"))
    throw SchemaError("bad morphism");
  fol::SignatureMorphism m;
  auto read = [&](const json& arr, fol::SymbolKind k) {
    if (!arr.is_array()) throw SchemaError("morphism entries must be arrays");
    for (const auto& p : arr) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw SchemaError("morphism entry is not a [from, to] pair");
      m.add(k, p[0].get<std::string>(), p[1].get<std::string>());
    }
  };
  read(o["functions"], fol::SymbolKind::Function);
  read(o["predicates"], fol::SymbolKind::Predicate);
  return m;
}

}  // namespace

std::string export_document(const dg::Structuring& s) {
  json doc;
  doc["format_version"] = 1;
  doc["reference"] = {{"signature", symbols_to_json(s.reference.sig)},
                      {"axioms", domain_sentences_to_json(s.reference.axioms)},
                      {"lemmas", domain_sentences_to_json(s.reference.lemmas)}};
  json nodes = json::array();
  for (const auto& [id, n] : s.graph.nodes) {
    nodes.push_back({{"id", id},
                     {"signature", symbols_to_json(n.sig)},
                     {"axioms", sentences_to_json(n.axioms)},
                     {"lemmas", sentences_to_json(n.lemmas)}});
  }
  doc["nodes"] = std::move(nodes);
  json links = json::array();
  for (const auto& l : s.graph.links) {
    json e = morphism_to_json(l.morphism);
    e["source"] = l.source;
    e["target"] = l.target;
    links.push_back(std::move(e));
  }
  doc["links"] = std::move(links);
  json supp = json::object();
  for (const auto& [lem, refs] : s.supp.entries) {
    json arr = json::array();
    for (const auto& r : refs) arr.push_back(r);
    supp[lem] = std::move(arr);
  }
  doc["support"] = std::move(supp);
  return doc.dump(2);
}

dg::Structuring import_document(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level must be an object");
  if (!doc.contains("format_version")) throw SchemaError("format_version missing");
  if (!doc["format_version"].is_number_integer() || doc["format_version"].get<int>() != 1)
    throw VersionMismatchError("expected format_version 1, got " + doc["format_version"].dump());
  for (const char* field : {"reference", "nodes", "links", "support"})
    if (!doc.contains(field)) throw SchemaError(std::string(field) + " missing");

  dg::Structuring s;
  for (const auto& nj : doc["nodes"]) {
    if (!nj.is_object() || !nj.contains("id")) throw SchemaError("bad node entry");
    dg::Node n;
    n.id = nj["id"].get<std::string>();
    n.sig = symbols_from_json(nj.at("signature"));
    n.axioms = sentences_from_json(nj.at("axioms"), fol::Role::Axiom);
    n.lemmas = sentences_from_json(nj.at("lemmas"), fol::Role::Lemma);
    n.normalize();
    if (!s.graph.nodes.emplace(n.id, std::move(n)).second)
      throw SchemaError("duplicate node id '" + nj["id"].get<std::string>() + "'");
  }
  for (const auto& lj : doc["links"]) {
    if (!lj.is_object() || !lj.contains("source") || !lj.contains("target"))
      throw SchemaError("bad link entry");
    try {
      s.graph.add_link(lj["source"].get<std::string>(), lj["target"].get<std::string>(),
                       morphism_from_json(lj));
    } catch (const dg::UnknownNodeError& e) {
      throw SchemaError(e.what());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  const auto& ref = doc["reference"];
  if (!ref.is_object()) throw SchemaError("bad reference");
  s.reference.sig = symbols_from_json(ref.at("signature"));
  for (const auto& x : sentences_from_json(ref.at("axioms"), fol::Role::Axiom))
    s.reference.insert_sentence(x);
  for (const auto& x : sentences_from_json(ref.at("lemmas"), fol::Role::Lemma))
    s.reference.insert_sentence(x);
  if (!doc["support"].is_object()) throw SchemaError("support must be an object");
  for (const auto& [lem, refs] : doc["support"].items()) {
    if (!refs.is_array()) throw SchemaError("support sets must be arrays");
    for (const auto& r : refs) {
      if (!r.is_string()) throw SchemaError("support references must be strings");
      s.supp.entries[lem].insert(r.get<std::string>());
    }
  }

  auto derived = dg::compute_location(s.graph);
  if (!derived.loc)
    throw SchemaError("document admits no location mapping: " + dg::render(derived.diags));
  s.loc = std::move(*derived.loc);
  return s;
}

}  // namespace theoryforge::graph_json
