#pragma once

#include <string>
#include <string_view>

#include "ontoform/graph.hpp"

namespace ontoform {

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

// Digest of the canonical Turtle serialization (blanks relabelled first).
std::string graph_hash(const Graph& graph);

}  // namespace ontoform
