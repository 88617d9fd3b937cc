#include <set>

#include "qlpa/moves.hpp"

namespace qlpa {
namespace {

std::string sub(const std::string& base, std::size_t i) { return base + "_" + std::to_string(i); }
std::string sup(const std::string& base, std::size_t i) { return base + "^" + std::to_string(i); }

const std::vector<std::size_t>& fiber_of(const Quiver& q, std::size_t v, Fiber fiber) {
  return fiber == Fiber::Range ? q.in_edges(v) : q.out_edges(v);
}

// Block number (1-based) of each edge within its fiber.
std::vector<std::size_t> block_of_edges(const Quiver& q, const Partition& p) {
  std::vector<std::size_t> block(q.edge_count(), 0);
  for (const auto& [v, blocks] : p.blocks)
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (const auto& e : blocks[i]) block[q.edge_index(e)] = i + 1;
  return block;
}

Partition trivial(const Quiver& q, Fiber fiber) {
  Partition p;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto& f = fiber_of(q, v, fiber);
    if (f.empty()) continue;
    std::vector<std::string> block;
    for (std::size_t e : f) block.push_back(q.edge(e).id);
    p.blocks[q.vertex(v)].push_back(std::move(block));
  }
  return p;
}

struct Unsplit {
  VertexSet vertices;
  std::map<std::string, std::string> base_of;  // generated vertex id -> original id
};

Unsplit unsplit_vertices(const Quiver& split, const Partition& p, bool superscript) {
  Unsplit u;
  for (const auto& [v, blocks] : p.blocks) {
    if (blocks.empty()) continue;
    u.vertices.insert(v);
    for (std::size_t i = 1; i <= blocks.size(); ++i)
      u.base_of.emplace(superscript ? sup(v, i) : sub(v, i), v);
  }
  for (const auto& v : split.vertices())
    if (!u.base_of.count(v)) u.vertices.insert(v);
  return u;
}

// Locate the split copy of original edge `e` (index 1 or unindexed) and
// return the original id of the endpoint selected by `pick`.
std::string original_endpoint(const Quiver& split, const Unsplit& u, const std::string& e,
                              bool superscript, bool want_source) {
  auto idx = split.find_edge(superscript ? sup(e, 1) : sub(e, 1));
  if (!idx) idx = split.find_edge(e);
  if (!idx)
    throw PreconditionError("not a split shape: no copy of edge '" + e + "' in the quiver");
  const Edge& ed = split.edge(*idx);
  const std::string& end = want_source ? ed.src : ed.dst;
  auto it = u.base_of.find(end);
  return it == u.base_of.end() ? end : it->second;
}

Quiver amalgamate(const Quiver& split, const Partition& p, Fiber fiber) {
  bool out = fiber == Fiber::Source;
  Unsplit u = unsplit_vertices(split, p, out);
  std::vector<Edge> edges;
  for (const auto& [v, blocks] : p.blocks)
    for (const auto& block : blocks)
      for (const auto& e : block) {
        std::string other = original_endpoint(split, u, e, out, /*want_source=*/!out);
        edges.push_back(out ? Edge{e, v, other} : Edge{e, other, v});
      }
  Quiver candidate;
  try {
    candidate = Quiver(std::vector<std::string>(u.vertices.begin(), u.vertices.end()),
                       std::move(edges));
    validate_partition(candidate, p, fiber);
  } catch (const Error& err) {
    throw PreconditionError(std::string("not a split shape: ") + err.what());
  }
  Quiver resplit = out ? out_split(candidate, p) : in_split(candidate, p);
  if (!(resplit == split))
    throw PreconditionError(std::string("quiver is not the ") + (out ? "out" : "in") +
                            "-split shape for this partition");
  return candidate;
}

}  // namespace

Partition Partition::trivial_in(const Quiver& q) { return trivial(q, Fiber::Range); }
Partition Partition::trivial_out(const Quiver& q) { return trivial(q, Fiber::Source); }

nlohmann::ordered_json partition_to_json(const Partition& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [v, blocks] : p.blocks) j[v] = blocks;
  return j;
}

Partition partition_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("partition must be an object vertex -> blocks");
  Partition p;
  for (const auto& [v, blocks] : j.items()) {
    if (!blocks.is_array()) throw PreconditionError("blocks of '" + v + "' must be an array");
    auto& out = p.blocks[v];
    for (const auto& block : blocks) {
      if (!block.is_array()) throw PreconditionError("each block must be an array of edge ids");
      std::vector<std::string> ids;
      for (const auto& e : block) {
        if (!e.is_string()) throw PreconditionError("edge ids must be strings");
        ids.push_back(e.get<std::string>());
      }
      out.push_back(std::move(ids));
    }
  }
  return p;
}

void validate_partition(const Quiver& q, const Partition& p, Fiber fiber) {
  const char* fiber_name = fiber == Fiber::Range ? "r^-1" : "s^-1";
  for (const auto& [v, blocks] : p.blocks) {
    std::size_t vi = q.vertex_index(v);
    std::set<std::size_t> fiber_edges(fiber_of(q, vi, fiber).begin(), fiber_of(q, vi, fiber).end());
    std::set<std::size_t> seen;
    for (const auto& block : blocks) {
      if (block.empty()) throw PreconditionError("empty block at vertex '" + v + "'");
      for (const auto& id : block) {
        std::size_t e = q.edge_index(id);
        if (!fiber_edges.count(e))
          throw PreconditionError("edge '" + id + "' is not in " + fiber_name + "(" + v + ")");
        if (!seen.insert(e).second)
          throw PreconditionError("edge '" + id + "' appears twice in the blocks of '" + v + "'");
      }
    }
    if (seen != fiber_edges)
      throw PreconditionError("blocks of '" + v + "' do not cover " + fiber_name + "(" + v + ")");
  }
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (!fiber_of(q, v, fiber).empty() && p.block_count(q.vertex(v)) == 0)
      throw PreconditionError("vertex '" + q.vertex(v) + "' has a nonempty " + fiber_name +
                              " fiber but no blocks");
}

Quiver in_split(const Quiver& q, const Partition& p) {
  validate_partition(q, p, Fiber::Range);
  auto block = block_of_edges(q, p);
  std::vector<std::string> vertices;
  for (const auto& v : q.vertices()) {
    std::size_t m = p.block_count(v);
    if (m == 0) vertices.push_back(v);
    for (std::size_t i = 1; i <= m; ++i) vertices.push_back(sub(v, i));
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    const Edge& ed = q.edge(e);
    std::string range = sub(ed.dst, block[e]);
    std::size_t ms = p.block_count(ed.src);
    if (ms == 0) edges.push_back({ed.id, ed.src, range});
    for (std::size_t j = 1; j <= ms; ++j) edges.push_back({sub(ed.id, j), sub(ed.src, j), range});
  }
  return Quiver(std::move(vertices), std::move(edges));
}

Quiver out_split(const Quiver& q, const Partition& p) {
  validate_partition(q, p, Fiber::Source);
  auto block = block_of_edges(q, p);
  std::vector<std::string> vertices;
  for (const auto& v : q.vertices()) {
    std::size_t m = p.block_count(v);
    if (m == 0) vertices.push_back(v);
    for (std::size_t i = 1; i <= m; ++i) vertices.push_back(sup(v, i));
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    const Edge& ed = q.edge(e);
    std::string source = sup(ed.src, block[e]);
    std::size_t mr = p.block_count(ed.dst);
    if (mr == 0) edges.push_back({ed.id, source, ed.dst});
    for (std::size_t j = 1; j <= mr; ++j) edges.push_back({sup(ed.id, j), source, sup(ed.dst, j)});
  }
  return Quiver(std::move(vertices), std::move(edges));
}

Quiver in_amalgamate(const Quiver& split, const Partition& p) {
  return amalgamate(split, p, Fiber::Range);
}

Quiver out_amalgamate(const Quiver& split, const Partition& p) {
  return amalgamate(split, p, Fiber::Source);
}

}  // namespace qlpa
