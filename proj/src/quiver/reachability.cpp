#include <algorithm>
#include <deque>
#include <functional>

#include "qlpa/error.hpp"
#include "qlpa/quiver.hpp"

namespace qlpa {
namespace {

std::vector<char> forward_closure(const Quiver& q, std::vector<std::size_t> seeds) {
  std::vector<char> seen(q.vertex_count(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t s : seeds)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : q.out_edges(v)) {
      std::size_t w = q.range(e);
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

VertexSet to_set(const Quiver& q, const std::vector<char>& mask) {
  VertexSet out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) out.insert(q.vertex(v));
  return out;
}

}  // namespace

bool reaches_set(const Quiver& q, const std::string& v, const VertexSet& targets) {
  std::size_t start = q.vertex_index(v);
  auto target_mask = q.mask_of(targets);
  auto seen = forward_closure(q, {start});
  for (std::size_t w = 0; w < seen.size(); ++w)
    if (seen[w] && target_mask[w]) return true;
  return false;
}

VertexSet tree(const Quiver& q, const std::string& v) {
  return to_set(q, forward_closure(q, {q.vertex_index(v)}));
}

VertexSet tree(const Quiver& q, const VertexSet& xs) {
  return to_set(q, forward_closure(q, q.indices_of(xs)));
}

bool is_hereditary(const Quiver& q, const VertexSet& h) {
  auto mask = q.mask_of(h);
  for (std::size_t e = 0; e < q.edge_count(); ++e)
    if (mask[q.source(e)] && !mask[q.range(e)]) return false;
  return true;
}

bool is_saturated(const Quiver& q, const VertexSet& h) {
  auto mask = q.mask_of(h);
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (mask[v] || !q.is_regular(v)) continue;
    bool all_in = std::all_of(q.out_edges(v).begin(), q.out_edges(v).end(),
                              [&](std::size_t e) { return mask[q.range(e)] != 0; });
    if (all_in) return false;
  }
  return true;
}

ClosureTrace hereditary_saturated_closure(const Quiver& q, const VertexSet& x) {
  ClosureTrace trace;
  auto level = forward_closure(q, q.indices_of(x));
  trace.levels.push_back(to_set(q, level));
  // Each round adds the regular vertices whose whole out-neighbourhood is in
  // the previous level, computed against that level as a whole.
  for (;;) {
    std::vector<char> next = level;
    bool grew = false;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      if (level[v] || !q.is_regular(v)) continue;
      bool all_in = std::all_of(q.out_edges(v).begin(), q.out_edges(v).end(),
                                [&](std::size_t e) { return level[q.range(e)] != 0; });
      if (all_in) {
        next[v] = 1;
        grew = true;
      }
    }
    if (!grew) break;
    level = std::move(next);
    trace.levels.push_back(to_set(q, level));
  }
  trace.closure = trace.levels.back();
  return trace;
}

bool cycles_meet(const Quiver& q, const VertexSet& keep) {
  // Kahn's algorithm on the subquiver induced by the dropped vertices.
  auto kept = q.mask_of(keep);
  std::vector<std::size_t> indeg(q.vertex_count(), 0);
  for (std::size_t e = 0; e < q.edge_count(); ++e)
    if (!kept[q.source(e)] && !kept[q.range(e)]) ++indeg[q.range(e)];
  std::vector<std::size_t> stack;
  std::size_t dropped = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (kept[v]) continue;
    ++dropped;
    if (indeg[v] == 0) stack.push_back(v);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    ++removed;
    for (std::size_t e : q.out_edges(v)) {
      std::size_t w = q.range(e);
      if (!kept[w] && --indeg[w] == 0) stack.push_back(w);
    }
  }
  return removed == dropped;
}

std::optional<std::vector<std::string>> find_cycle_avoiding(const Quiver& q,
                                                            const VertexSet& keep) {
  auto kept = q.mask_of(keep);
  enum : char { White, Grey, Black };
  std::vector<char> colour(q.vertex_count(), White);
  std::vector<std::size_t> edge_stack;
  std::optional<std::vector<std::string>> found;

  std::function<bool(std::size_t)> dfs = [&](std::size_t v) -> bool {
    colour[v] = Grey;
    for (std::size_t e : q.out_edges(v)) {
      std::size_t w = q.range(e);
      if (kept[w]) continue;
      if (colour[w] == Grey) {
        // Unwind the edge stack back to where w was entered.
        std::vector<std::string> cycle{q.edge(e).id};
        for (auto it = edge_stack.rbegin(); it != edge_stack.rend(); ++it) {
          if (q.range(*it) == w) break;
          cycle.push_back(q.edge(*it).id);
          if (q.source(*it) == w) break;
        }
        std::reverse(cycle.begin(), cycle.end());
        found = std::move(cycle);
        return true;
      }
      if (colour[w] == White) {
        edge_stack.push_back(e);
        if (dfs(w)) return true;
        edge_stack.pop_back();
      }
    }
    colour[v] = Black;
    return false;
  };
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (!kept[v] && colour[v] == White && dfs(v)) return found;
  return std::nullopt;
}

std::vector<Path> bridge_paths_from(const Quiver& q, const VertexSet& keep,
                                    const std::string& v) {
  auto kept = q.mask_of(keep);
  std::size_t start = q.vertex_index(v);
  std::vector<Path> out;
  std::vector<char> on_path(q.vertex_count(), 0);
  Path current{start, {}};

  // Interior vertices are outside `keep`; meeting one twice on the current
  // branch means a cycle avoids `keep` and B_v is infinite.
  std::function<void(std::size_t)> extend = [&](std::size_t at) {
    for (std::size_t e : q.out_edges(at)) {
      std::size_t w = q.range(e);
      current.edges.push_back(e);
      if (kept[w]) {
        out.push_back(current);
      } else {
        if (on_path[w])
          throw PreconditionError("cycle avoiding the kept set through vertex '" +
                                  q.vertex(w) + "'; B_" + v + " is infinite");
        on_path[w] = 1;
        extend(w);
        on_path[w] = 0;
      }
      current.edges.pop_back();
    }
  };
  if (!kept[start]) on_path[start] = 1;
  extend(start);
  return out;
}

std::map<std::string, std::vector<Path>> bridge_paths(const Quiver& q,
                                                      const VertexSet& keep) {
  if (auto cycle = find_cycle_avoiding(q, keep)) {
    std::string desc;
    for (const auto& id : *cycle) desc += (desc.empty() ? "" : " ") + id;
    throw PreconditionError("cycle avoiding the kept set: " + desc);
  }
  std::map<std::string, std::vector<Path>> out;
  for (const auto& v : q.vertices()) out.emplace(v, bridge_paths_from(q, keep, v));
  return out;
}

}  // namespace qlpa
