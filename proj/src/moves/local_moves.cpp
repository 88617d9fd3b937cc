#include <algorithm>

#include "qlpa/moves.hpp"

namespace qlpa {

Quiver source_eliminate(const Quiver& q, const std::string& v) {
  std::size_t vi = q.vertex_index(v);
  if (q.vertex_count() < 2)
    throw PreconditionError("source elimination needs at least two vertices");
  if (!q.is_source(vi)) throw PreconditionError("vertex '" + v + "' is not a source");
  std::vector<std::string> vertices;
  for (const auto& w : q.vertices())
    if (w != v) vertices.push_back(w);
  std::vector<Edge> edges;
  for (const auto& e : q.edges())
    if (e.src != v) edges.push_back(e);
  return Quiver(std::move(vertices), std::move(edges));
}

Quiver expand(const Quiver& q, const std::string& v) {
  q.vertex_index(v);
  std::string star = expansion_vertex(v);
  std::string f = expansion_edge(v);
  if (q.find_vertex(star)) throw PreconditionError("vertex id '" + star + "' is already in use");
  if (q.find_edge(f)) throw PreconditionError("edge id '" + f + "' is already in use");
  std::vector<std::string> vertices = q.vertices();
  vertices.push_back(star);
  std::vector<Edge> edges;
  for (const auto& e : q.edges()) edges.push_back({e.id, e.src == v ? star : e.src, e.dst});
  edges.push_back({f, v, star});
  return Quiver(std::move(vertices), std::move(edges));
}

Quiver contract(const Quiver& q, const std::string& v) {
  std::size_t vi = q.vertex_index(v);
  const auto& out = q.out_edges(vi);
  if (out.size() != 1)
    throw PreconditionError("vertex '" + v + "' must emit exactly one edge to be contracted");
  std::size_t f = out.front();
  std::size_t star = q.range(f);
  if (star == vi) throw PreconditionError("the edge leaving '" + v + "' is a loop");
  if (q.in_edges(star).size() != 1)
    throw PreconditionError("vertex '" + q.vertex(star) + "' receives more than the edge '" +
                            q.edge(f).id + "'");
  const std::string& star_id = q.vertex(star);
  std::vector<std::string> vertices;
  for (const auto& w : q.vertices())
    if (w != star_id) vertices.push_back(w);
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    if (e == f) continue;
    const Edge& ed = q.edge(e);
    edges.push_back({ed.id, ed.src == star_id ? v : ed.src, ed.dst});
  }
  return Quiver(std::move(vertices), std::move(edges));
}

std::uint64_t DrinenVector::vertex(const std::string& v) const {
  auto it = vertex_values.find(v);
  return it == vertex_values.end() ? 0 : it->second;
}

std::uint64_t DrinenVector::edge(const std::string& e) const {
  auto it = edge_values.find(e);
  return it == edge_values.end() ? 0 : it->second;
}

nlohmann::ordered_json drinen_to_json(const DrinenVector& d) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::object();
  j["edges"] = nlohmann::ordered_json::object();
  for (const auto& [v, n] : d.vertex_values) j["vertices"][v] = n;
  for (const auto& [e, n] : d.edge_values) j["edges"][e] = n;
  return j;
}

DrinenVector drinen_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("Drinen vector must be an object");
  DrinenVector d;
  auto read = [](const nlohmann::json& m, std::map<std::string, std::uint64_t>& out) {
    if (!m.is_object()) throw PreconditionError("Drinen values must be an object id -> integer");
    for (const auto& [id, n] : m.items()) {
      if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<std::int64_t>() >= 0))
        throw PreconditionError("Drinen value of '" + id + "' must be a nonnegative integer");
      out[id] = n.get<std::uint64_t>();
    }
  };
  if (j.contains("vertices")) read(j.at("vertices"), d.vertex_values);
  if (j.contains("edges")) read(j.at("edges"), d.edge_values);
  return d;
}

namespace {

void check_ids(const Quiver& q, const DrinenVector& d) {
  for (const auto& [v, n] : d.vertex_values) q.vertex_index(v);
  for (const auto& [e, n] : d.edge_values) q.edge_index(e);
}

void check_fiber_max(const Quiver& q, const DrinenVector& d, bool by_source) {
  check_ids(q, d);
  for (std::size_t w = 0; w < q.vertex_count(); ++w) {
    const auto& fiber = by_source ? q.out_edges(w) : q.in_edges(w);
    if (fiber.empty()) continue;
    std::uint64_t best = 0;
    for (std::size_t e : fiber) best = std::max(best, d.edge(q.edge(e).id));
    if (d.vertex(q.vertex(w)) != best)
      throw PreconditionError("d(" + q.vertex(w) + ") = " + std::to_string(d.vertex(q.vertex(w))) +
                              " but the max over its " + (by_source ? "outgoing" : "incoming") +
                              " edges is " + std::to_string(best));
  }
}

std::string delay_edge(const std::string& v, std::uint64_t i) {
  return "f:" + v + ":" + std::to_string(i);
}

std::vector<std::string> delay_vertices(const Quiver& q, const DrinenVector& d) {
  std::vector<std::string> vertices;
  for (const auto& v : q.vertices())
    for (std::uint64_t i = 0; i <= d.vertex(v); ++i) vertices.push_back(delay_vertex(v, i));
  return vertices;
}

}  // namespace

void validate_source_vector(const Quiver& q, const DrinenVector& d) { check_fiber_max(q, d, true); }
void validate_range_vector(const Quiver& q, const DrinenVector& d) { check_fiber_max(q, d, false); }

std::string delay_vertex(const std::string& v, std::uint64_t i) {
  return i == 0 ? v : v + ":" + std::to_string(i);
}

namespace detail {

Quiver build_out_delayed(const Quiver& q, const DrinenVector& d) {
  check_ids(q, d);
  std::vector<Edge> edges;
  for (const auto& e : q.edges()) {
    if (d.edge(e.id) > d.vertex(e.src))
      throw PreconditionError("d(" + e.id + ") exceeds d(" + e.src + ")");
    edges.push_back({e.id, delay_vertex(e.src, d.edge(e.id)), e.dst});
  }
  for (const auto& v : q.vertices())
    for (std::uint64_t i = 1; i <= d.vertex(v); ++i)
      edges.push_back({delay_edge(v, i), delay_vertex(v, i - 1), delay_vertex(v, i)});
  return Quiver(delay_vertices(q, d), std::move(edges));
}

Quiver build_in_delayed(const Quiver& q, const DrinenVector& d) {
  check_ids(q, d);
  std::vector<Edge> edges;
  for (const auto& e : q.edges()) {
    if (d.edge(e.id) > d.vertex(e.dst))
      throw PreconditionError("d(" + e.id + ") exceeds d(" + e.dst + ")");
    edges.push_back({e.id, e.src, delay_vertex(e.dst, d.edge(e.id))});
  }
  for (const auto& v : q.vertices())
    for (std::uint64_t i = 1; i <= d.vertex(v); ++i)
      edges.push_back({delay_edge(v, i), delay_vertex(v, i), delay_vertex(v, i - 1)});
  return Quiver(delay_vertices(q, d), std::move(edges));
}

}  // namespace detail

Quiver out_delay(const Quiver& q, const DrinenVector& d) {
  validate_source_vector(q, d);
  return detail::build_out_delayed(q, d);
}

Quiver in_delay(const Quiver& q, const DrinenVector& d) {
  validate_range_vector(q, d);
  return detail::build_in_delayed(q, d);
}

ProperResult is_strictly_proper(const DrinenVector& d, const Quiver& q) {
  validate_source_vector(q, d);
  return {true,
          "every vertex of a finite quiver has finite valency, so no delay copy can be an "
          "infinite emitter"};
}

Quiver attach_heads(const Quiver& q, std::size_t n) {
  if (n == 0) throw PreconditionError("head length parameter n must be at least 1");
  std::vector<std::string> vertices = q.vertices();
  std::vector<Edge> edges = q.edges();
  for (const auto& v : q.vertices())
    for (std::size_t i = 1; i < n; ++i) {
      vertices.push_back(delay_vertex(v, i));
      edges.push_back({"e:" + v + ":" + std::to_string(i), delay_vertex(v, i),
                       delay_vertex(v, i - 1)});
    }
  return Quiver(std::move(vertices), std::move(edges));
}

Quiver higher_edge(const Quiver& q, std::size_t n) {
  if (n < 2) throw PreconditionError("higher edge quiver needs n >= 2");
  auto join = [&](const Path& p, std::size_t from, std::size_t count) {
    std::string id;
    for (std::size_t i = from; i < from + count; ++i) {
      if (i > from) id += '.';
      id += q.edge(p.edges[i]).id;
    }
    return id;
  };
  std::vector<std::string> vertices;
  for (const Path& p : paths_of_length(q, n - 1)) vertices.push_back(join(p, 0, n - 1));
  std::vector<Edge> edges;
  for (const Path& p : paths_of_length(q, n))
    edges.push_back({join(p, 0, n), join(p, 0, n - 1), join(p, 1, n - 1)});
  return Quiver(std::move(vertices), std::move(edges));
}

}  // namespace qlpa
