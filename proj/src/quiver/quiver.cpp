#include "qlpa/quiver.hpp"

#include <algorithm>

#include "qlpa/error.hpp"

namespace qlpa {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (auto dup = std::adjacent_find(vertices_.begin(), vertices_.end());
      dup != vertices_.end())
    throw InvalidQuiver("duplicate vertex id '" + *dup + "'");
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].id == edges_[i].id)
      throw InvalidQuiver("duplicate edge id '" + edges_[i].id + "'");

  for (std::size_t v = 0; v < vertices_.size(); ++v) vertex_lookup_.emplace(vertices_[v], v);
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  src_.reserve(edges_.size());
  dst_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    auto s = vertex_lookup_.find(ed.src);
    auto r = vertex_lookup_.find(ed.dst);
    if (s == vertex_lookup_.end())
      throw InvalidQuiver("edge '" + ed.id + "' has unknown source '" + ed.src + "'");
    if (r == vertex_lookup_.end())
      throw InvalidQuiver("edge '" + ed.id + "' has unknown range '" + ed.dst + "'");
    src_.push_back(s->second);
    dst_.push_back(r->second);
    out_[s->second].push_back(e);
    in_[r->second].push_back(e);
    edge_lookup_.emplace(ed.id, e);
  }
}

std::optional<std::size_t> Quiver::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Quiver::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Quiver::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw UnknownId("unknown vertex '" + std::string(id) + "'");
}

std::size_t Quiver::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw UnknownId("unknown edge '" + std::string(id) + "'");
}

std::vector<std::size_t> Quiver::indices_of(const VertexSet& ids) const {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(vertex_index(id));
  return out;
}

std::vector<char> Quiver::mask_of(const VertexSet& ids) const {
  std::vector<char> mask(vertices_.size(), 0);
  for (const auto& id : ids) mask[vertex_index(id)] = 1;
  return mask;
}

Path Quiver::make_path(std::span<const std::string> edge_ids) const {
  if (edge_ids.empty()) throw PreconditionError("make_path needs at least one edge");
  Path p;
  p.start = src_[edge_index(edge_ids.front())];
  for (const auto& id : edge_ids) {
    std::size_t e = edge_index(id);
    if (!p.edges.empty() && dst_[p.edges.back()] != src_[e])
      throw PreconditionError("edges do not compose at '" + id + "'");
    p.edges.push_back(e);
  }
  return p;
}

bool Quiver::is_valid_path(const Path& p) const {
  if (p.start >= vertices_.size()) return false;
  std::size_t at = p.start;
  for (std::size_t e : p.edges) {
    if (e >= edges_.size() || src_[e] != at) return false;
    at = dst_[e];
  }
  return true;
}

std::vector<std::string> Quiver::path_ids(const Path& p) const {
  std::vector<std::string> ids;
  ids.reserve(p.edges.size());
  for (std::size_t e : p.edges) ids.push_back(edges_[e].id);
  return ids;
}

std::set<std::size_t> Quiver::path_vertices(const Path& p) const {
  std::set<std::size_t> vs{p.start};
  for (std::size_t e : p.edges) vs.insert(dst_[e]);
  return vs;
}

std::string Quiver::path_to_string(const Path& p) const {
  if (p.trivial()) return vertices_[p.start];
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ' ';
    s += edges_[p.edges[i]].id;
  }
  return s;
}

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

bool is_prefix(const Path& prefix, const Path& p) {
  if (prefix.start != p.start || prefix.edges.size() > p.edges.size()) return false;
  return std::equal(prefix.edges.begin(), prefix.edges.end(), p.edges.begin());
}

std::string to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Sink: return "sink";
    case VertexKind::Source: return "source";
    case VertexKind::Regular: return "regular";
    case VertexKind::Isolated: return "isolated";
  }
  return "?";
}

std::map<std::string, VertexKind> classify_vertices(const Quiver& q) {
  std::map<std::string, VertexKind> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    VertexKind k;
    if (q.is_sink(v) && q.is_source(v))
      k = VertexKind::Isolated;
    else if (q.is_sink(v))
      k = VertexKind::Sink;
    else if (q.is_source(v))
      k = VertexKind::Source;
    else
      k = VertexKind::Regular;
    out.emplace(q.vertex(v), k);
  }
  return out;
}

VertexSet sinks(const Quiver& q) {
  VertexSet out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (q.is_sink(v)) out.insert(q.vertex(v));
  return out;
}

VertexSet sources(const Quiver& q) {
  VertexSet out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (q.is_source(v)) out.insert(q.vertex(v));
  return out;
}

std::vector<Path> paths_of_length(const Quiver& q, std::size_t n) {
  std::vector<Path> current;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) current.push_back(q.trivial_path(v));
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Path> next;
    for (const Path& p : current)
      for (std::size_t e : q.out_edges(q.path_range(p))) {
        Path ext = p;
        ext.edges.push_back(e);
        next.push_back(std::move(ext));
      }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end(), [](const Path& a, const Path& b) {
    return a.edges != b.edges ? a.edges < b.edges : a.start < b.start;
  });
  return current;
}

}  // namespace qlpa
