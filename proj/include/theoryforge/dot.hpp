#ifndef THEORYFORGE_DOT_HPP
#define THEORYFORGE_DOT_HPP

#include <string>

#include "theoryforge/devgraph.hpp"

namespace theoryforge::dot {

// One DOT digraph. Node labels show the id plus |sig|/|ax|/|lem| counts, edge
// labels the non-identity morphism pairs; factor nodes (no imports, two or
// more renaming exports) are filled.
std::string export_dot(const dg::Structuring& s);

}  // namespace theoryforge::dot

#endif
