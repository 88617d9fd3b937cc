#include "qlpa/quiver_io.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "qlpa/error.hpp"

namespace qlpa {

nlohmann::ordered_json quiver_to_json(const Quiver& q) {
  nlohmann::ordered_json j;
  j["vertices"] = q.vertices();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : q.edges()) {
    nlohmann::ordered_json ej;
    ej["id"] = e.id;
    ej["src"] = e.src;
    ej["dst"] = e.dst;
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j;
}

Quiver quiver_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw InvalidQuiver("quiver JSON needs a \"vertices\" array");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw InvalidQuiver("vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw InvalidQuiver("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("id") || !e.contains("src") || !e.contains("dst") ||
          !e["id"].is_string() || !e["src"].is_string() || !e["dst"].is_string())
        throw InvalidQuiver("each edge needs string fields id, src, dst");
      edges.push_back({e["id"].get<std::string>(), e["src"].get<std::string>(),
                       e["dst"].get<std::string>()});
    }
  }
  return Quiver(std::move(vertices), std::move(edges));
}

std::string canonical_string(const Quiver& q) { return quiver_to_json(q).dump(); }

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw InternalError("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string quiver_hash(const Quiver& q) { return sha256_hex(canonical_string(q)); }

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Quiver& q, const std::string& graph_name) {
  std::string out = "digraph " + dot_quote(graph_name) + " {\n";
  for (const auto& v : q.vertices()) out += "  " + dot_quote(v) + ";\n";
  for (const auto& e : q.edges())
    out += "  " + dot_quote(e.src) + " -> " + dot_quote(e.dst) + " [label=" + dot_quote(e.id) +
           "];\n";
  out += "}\n";
  return out;
}

nlohmann::ordered_json vertex_set_to_json(const VertexSet& s) {
  return nlohmann::ordered_json(std::vector<std::string>(s.begin(), s.end()));
}

VertexSet vertex_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidQuiver("vertex set must be an array of ids");
  VertexSet out;
  for (const auto& v : j) {
    if (!v.is_string()) throw InvalidQuiver("vertex ids must be strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace qlpa
