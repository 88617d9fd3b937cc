#include <algorithm>

#include "qlpa/moves.hpp"

namespace qlpa {

std::string collapse_edge_id(const Quiver& q, const Path& p) {
  std::string id = "e__";
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) id += '/';
    id += q.edge(p.edges[i]).id;
  }
  return id;
}

std::optional<Path> parse_collapse_edge_id(const Quiver& q, std::string_view id) {
  constexpr std::string_view prefix = "e__";
  if (id.substr(0, prefix.size()) != prefix || id.size() == prefix.size()) return std::nullopt;
  std::vector<std::string> parts;
  std::string_view rest = id.substr(prefix.size());
  for (;;) {
    auto slash = rest.find('/');
    parts.emplace_back(rest.substr(0, slash));
    if (slash == std::string_view::npos) break;
    rest = rest.substr(slash + 1);
  }
  for (const auto& part : parts)
    if (!q.find_edge(part)) return std::nullopt;
  try {
    return q.make_path(parts);
  } catch (const Error&) {
    return std::nullopt;
  }
}

CollapseResult collapse(const Quiver& q, const VertexSet& keep) {
  if (keep.empty()) throw PreconditionError("collapse needs a nonempty kept vertex set");
  auto kept = q.mask_of(keep);
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (q.is_sink(v) && !kept[v])
      throw PreconditionError("sink '" + q.vertex(v) + "' is not in the kept set");
  if (auto cycle = find_cycle_avoiding(q, keep)) {
    std::string desc;
    for (const auto& id : *cycle) desc += (desc.empty() ? "" : " ") + id;
    throw PreconditionError("cycle avoids the kept set: " + desc);
  }

  CollapseResult result;
  std::vector<Edge> edges;
  std::size_t longest = 0;
  for (const auto& v : keep) {
    for (Path& p : bridge_paths_from(q, keep, v)) {
      std::string id = collapse_edge_id(q, p);
      edges.push_back({id, v, q.vertex(q.path_range(p))});
      longest = std::max(longest, p.length());
      result.edge_origin.emplace(std::move(id), std::move(p));
    }
  }
  result.q_prime = Quiver(std::vector<std::string>(keep.begin(), keep.end()), std::move(edges));
  result.n_max = std::max<std::size_t>(1, longest);
  return result;
}

}  // namespace qlpa
