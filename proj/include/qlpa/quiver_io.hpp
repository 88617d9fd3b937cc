#pragma once

#include <string>

#include "json.hpp"
#include "qlpa/quiver.hpp"

namespace qlpa {

/// {"vertices": [...], "edges": [{"id": .., "src": .., "dst": ..}, ...]}
/// in canonical (sorted) order.
nlohmann::ordered_json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const nlohmann::json& j);

/// Compact canonical serialization; the input to quiver hashing.
std::string canonical_string(const Quiver& q);
/// Lowercase hex SHA-256 of canonical_string(q).
std::string quiver_hash(const Quiver& q);
std::string sha256_hex(const std::string& bytes);

std::string to_dot(const Quiver& q, const std::string& graph_name = "Q");

nlohmann::ordered_json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const nlohmann::json& j);

}  // namespace qlpa
