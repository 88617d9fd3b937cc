#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qlpa/error.hpp"
#include "qlpa/quiver.hpp"

namespace qlpa {

// ---------------------------------------------------------------------------
// Collapse
// ---------------------------------------------------------------------------

/// Output of collapse(): Q' has the kept vertices and one edge e_mu per path
/// mu that leaves a kept vertex and first returns to the kept set at its end.
struct CollapseResult {
  Quiver q_prime;
  /// Longest origin path; 1 when there are none.
  std::size_t n_max = 1;
  /// Q' edge id -> origin path in the collapsed quiver.
  std::map<std::string, Path> edge_origin;
};

/// "e__" followed by the origin path's edge ids joined with '/'.
std::string collapse_edge_id(const Quiver& q, const Path& p);
/// Inverse of collapse_edge_id; nullopt if `id` is not of that form in q.
std::optional<Path> parse_collapse_edge_id(const Quiver& q, std::string_view id);

/// Requires a nonempty `keep` containing every sink and meeting every cycle.
/// Violations throw PreconditionError naming the offending sink or cycle.
CollapseResult collapse(const Quiver& q, const VertexSet& keep);

// ---------------------------------------------------------------------------
// In/out splitting and amalgamation
// ---------------------------------------------------------------------------

/// For each vertex, an ordered list of edge blocks. In-splits partition
/// r^{-1}(v); out-splits partition s^{-1}(v). Vertices with an empty fiber
/// are omitted or mapped to an empty list.
struct Partition {
  std::map<std::string, std::vector<std::vector<std::string>>> blocks;

  std::size_t block_count(const std::string& v) const {
    auto it = blocks.find(v);
    return it == blocks.end() ? 0 : it->second.size();
  }

  /// One block per nonempty fiber.
  static Partition trivial_in(const Quiver& q);
  static Partition trivial_out(const Quiver& q);
};

nlohmann::ordered_json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

enum class Fiber { Range, Source };
/// Throws PreconditionError on overlap, gaps, empty blocks or stray edges.
void validate_partition(const Quiver& q, const Partition& p, Fiber fiber);

/// Split vertices are named `v_i` (in) / `v^i` (out) for i >= 1 and split
/// edges `e_j` / `e^j`; vertices with an empty fiber and edges attached to
/// them keep their ids.
Quiver in_split(const Quiver& q, const Partition& p);
Quiver out_split(const Quiver& q, const Partition& p);
/// Recover the quiver that `split` was split from. The input must be exactly
/// the split shape produced by in_split/out_split for `p`.
Quiver in_amalgamate(const Quiver& split, const Partition& p);
Quiver out_amalgamate(const Quiver& split, const Partition& p);

// ---------------------------------------------------------------------------
// Source elimination, expansion, contraction
// ---------------------------------------------------------------------------

Quiver source_eliminate(const Quiver& q, const std::string& v);

inline std::string expansion_vertex(const std::string& v) { return v + "*"; }
inline std::string expansion_edge(const std::string& v) { return "f_" + v; }

/// Adds v* and f: v -> v*; edges formerly leaving v leave v* instead.
Quiver expand(const Quiver& q, const std::string& v);
/// Inverse of expand: v must emit exactly one edge f, with r(f) != v and f
/// the only edge entering r(f).
Quiver contract(const Quiver& q, const std::string& v);

// ---------------------------------------------------------------------------
// Drinen delays and heads
// ---------------------------------------------------------------------------

/// Finite Drinen vector; ids missing from a map have value 0.
struct DrinenVector {
  std::map<std::string, std::uint64_t> vertex_values;
  std::map<std::string, std::uint64_t> edge_values;

  std::uint64_t vertex(const std::string& v) const;
  std::uint64_t edge(const std::string& e) const;
};

nlohmann::ordered_json drinen_to_json(const DrinenVector& d);
DrinenVector drinen_from_json(const nlohmann::json& j);

/// d(w) = max{d(e) : s(e) = w} at every non-sink w.
void validate_source_vector(const Quiver& q, const DrinenVector& d);
/// d(w) = max{d(e) : r(e) = w} at every non-source w.
void validate_range_vector(const Quiver& q, const DrinenVector& d);

/// Name of the i-th delay copy of v (v itself for i = 0).
std::string delay_vertex(const std::string& v, std::uint64_t i);

Quiver out_delay(const Quiver& q, const DrinenVector& d);
Quiver in_delay(const Quiver& q, const DrinenVector& d);

namespace detail {
/// The in-delay construction without the range-vector check; edges must
/// still satisfy d(e) <= d(r(e)).
Quiver build_in_delayed(const Quiver& q, const DrinenVector& d);
Quiver build_out_delayed(const Quiver& q, const DrinenVector& d);
}  // namespace detail

struct ProperResult {
  bool strictly_proper = true;
  std::string reason;
};
/// Strict properness can only fail at vertices of infinite valency, which a
/// finite quiver does not have; the answer is therefore always true once `d`
/// is a valid source vector, and `reason` says so.
ProperResult is_strictly_proper(const DrinenVector& d, const Quiver& q);

/// M_n Q: every vertex v gets a chain v:(n-1) -> ... -> v:1 -> v.
Quiver attach_heads(const Quiver& q, std::size_t n);

/// Q^[n]: vertices are paths of length n-1 (ids joined with '.'), one edge
/// per path of length n.
Quiver higher_edge(const Quiver& q, std::size_t n);

// ---------------------------------------------------------------------------
// Flow equivalence sequences
// ---------------------------------------------------------------------------

struct FlowMove {
  enum class Kind { InSplit, InAmalgamate, OutSplit, OutAmalgamate, Expand, Contract };
  Kind kind;
  Partition partition;  // split / amalgamate
  std::string vertex;   // expand / contract
};

std::string to_string(FlowMove::Kind kind);
nlohmann::ordered_json flow_move_to_json(const FlowMove& m);
FlowMove flow_move_from_json(const nlohmann::json& j);

Quiver apply_flow_move(const Quiver& q, const FlowMove& m);

class FlowError : public Error {
 public:
  FlowError(std::size_t index, const std::string& reason)
      : Error("move " + std::to_string(index) + ": " + reason), index_(index) {}
  std::size_t index() const noexcept { return index_; }
  const char* kind() const noexcept override { return "flow"; }

 private:
  std::size_t index_;
};

struct FlowResult {
  Quiver result;
  /// log[0] is the input; log[i + 1] is the quiver after move i.
  std::vector<Quiver> log;
};

FlowResult apply_flow_sequence(const Quiver& q, const std::vector<FlowMove>& moves);

}  // namespace qlpa
