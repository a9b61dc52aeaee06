#ifndef THEORYFORGE_GRAPH_JSON_HPP
#define THEORYFORGE_GRAPH_JSON_HPP

// Versioned JSON serialization of structurings (format_version 1). TPTP has
// no syntax for links with renamings, so exports use this format instead.

#include <string>

#include "theoryforge/devgraph.hpp"

namespace theoryforge::graph_json {

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error("schema error: " + what) {}
};

struct VersionMismatchError : std::runtime_error {
  explicit VersionMismatchError(const std::string& what)
      : std::runtime_error("format version mismatch: " + what) {}
};

std::string export_document(const dg::Structuring& s);

// Lossless up to entity isomorphism; the location mapping is recomputed from
// unique providers.
dg::Structuring import_document(const std::string& json_text);

}  // namespace theoryforge::graph_json

#endif
