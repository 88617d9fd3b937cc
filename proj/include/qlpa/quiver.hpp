#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qlpa {

using VertexSet = std::set<std::string>;

struct Edge {
  std::string id;
  std::string src;
  std::string dst;

  auto operator<=>(const Edge&) const = default;
};

/// A path in a particular quiver, stored by index. `start` is always s(path);
/// an empty edge list is the trivial path at `start`.
struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> edges;

  bool trivial() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }

  auto operator<=>(const Path&) const = default;
};

/// Finite quiver with string ids. Vertices and edges are kept sorted by id,
/// so indices follow lexicographic id order and every derived listing is
/// deterministic. Immutable after construction.
class Quiver {
 public:
  Quiver() = default;
  /// Throws InvalidQuiver on duplicate ids or dangling endpoints.
  Quiver(std::vector<std::string> vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex(std::size_t v) const { return vertices_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Like find_*, but throws UnknownId.
  std::size_t vertex_index(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;

  std::size_t source(std::size_t e) const { return src_[e]; }
  std::size_t range(std::size_t e) const { return dst_[e]; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }

  bool is_sink(std::size_t v) const { return out_[v].empty(); }
  bool is_source(std::size_t v) const { return in_[v].empty(); }
  /// Finite quivers have no infinite emitters, so regular means "emits".
  bool is_regular(std::size_t v) const { return !out_[v].empty(); }

  VertexSet vertex_set() const { return {vertices_.begin(), vertices_.end()}; }
  std::vector<std::size_t> indices_of(const VertexSet& ids) const;
  std::vector<char> mask_of(const VertexSet& ids) const;

  // Paths.
  Path trivial_path(std::size_t v) const { return Path{v, {}}; }
  Path edge_path(std::size_t e) const { return Path{src_[e], {e}}; }
  /// Builds a path from edge ids; throws PreconditionError when the edges do
  /// not compose and UnknownId for unknown ids.
  Path make_path(std::span<const std::string> edge_ids) const;
  std::size_t path_range(const Path& p) const {
    return p.edges.empty() ? p.start : dst_[p.edges.back()];
  }
  bool is_valid_path(const Path& p) const;
  std::vector<std::string> path_ids(const Path& p) const;
  /// The vertex set of a path: s(a1), r(a1), ..., r(an).
  std::set<std::size_t> path_vertices(const Path& p) const;
  std::string path_to_string(const Path& p) const;

  bool operator==(const Quiver& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> src_, dst_;
  std::vector<std::vector<std::size_t>> out_, in_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
};

/// Concatenation; requires r(a) == s(b).
Path concat(const Path& a, const Path& b);
/// True when `prefix` is an initial segment of `p` (a trivial path at s(p)
/// is a prefix of p).
bool is_prefix(const Path& prefix, const Path& p);

enum class VertexKind { Sink, Source, Regular, Isolated };
std::string to_string(VertexKind kind);

/// Sink: emits nothing. Source: receives nothing but emits. Isolated: both a
/// source and a sink. Regular: everything else that emits.
std::map<std::string, VertexKind> classify_vertices(const Quiver& q);
VertexSet sinks(const Quiver& q);
VertexSet sources(const Quiver& q);

bool reaches_set(const Quiver& q, const std::string& v, const VertexSet& targets);
VertexSet tree(const Quiver& q, const std::string& v);
VertexSet tree(const Quiver& q, const VertexSet& xs);

bool is_hereditary(const Quiver& q, const VertexSet& h);
bool is_saturated(const Quiver& q, const VertexSet& h);

struct ClosureTrace {
  /// levels[n] is the n-th stage of the iteration; levels[0] = T(X) and the
  /// last entry is the fixpoint.
  std::vector<VertexSet> levels;
  VertexSet closure;
};
ClosureTrace hereditary_saturated_closure(const Quiver& q, const VertexSet& x);

/// True iff the subquiver induced on the vertices outside `keep` is acyclic,
/// i.e. every cycle of q passes through `keep`.
bool cycles_meet(const Quiver& q, const VertexSet& keep);
/// Some cycle (as edge ids) whose vertices all avoid `keep`, if one exists.
std::optional<std::vector<std::string>> find_cycle_avoiding(const Quiver& q,
                                                            const VertexSet& keep);

/// B_v for a single v: nontrivial paths from v that end in `keep` and whose
/// intermediate vertices all lie outside it. Listed in lexicographic edge
/// order. Throws PreconditionError if a cycle outside `keep` is reachable.
std::vector<Path> bridge_paths_from(const Quiver& q, const VertexSet& keep,
                                    const std::string& v);
std::map<std::string, std::vector<Path>> bridge_paths(const Quiver& q,
                                                      const VertexSet& keep);

std::vector<Path> paths_of_length(const Quiver& q, std::size_t n);

}  // namespace qlpa
