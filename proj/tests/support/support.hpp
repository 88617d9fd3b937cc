#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qlpa/element.hpp"
#include "qlpa/matrix.hpp"
#include "qlpa/moves.hpp"
#include "qlpa/quiver.hpp"

namespace qlpa::testing {

using EdgeSpec = std::tuple<std::string, std::string, std::string>;  // id, src, dst

Quiver make_quiver(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

// Fixtures drawn from the worked examples.

/// 1 -a-> 2 -b-> 3
Quiver line_quiver();
/// a: 1 -> 2, b: 2 -> 1
Quiver two_cycle();
/// A -> v_i -> B -> u_j -> A for i <= n, j <= m.
Quiver funnel_quiver(std::size_t m, std::size_t n);
/// A -> v_i -> B, A -> u_j -> B, B -> c -> A.
Quiver fan_quiver(std::size_t m, std::size_t n);
/// Q1: a1 -> a2 plus a loop at a2.
Quiver esse_q1();
/// Q2: two edges b1 -> b2 plus a loop at b2.
Quiver esse_q2();
/// Bridging quiver: b1 => a1 (two edges), a1 -> b2, b2 -> a2, a2 -> b2.
Quiver esse_q3();
/// alpha: L -> T, beta: T -> R, gamma: L -> R, delta loop at R.
Quiver higher_edge_example();
/// Vertices alpha, beta, gamma, delta with edges alpha->beta, beta->delta,
/// gamma->delta and a loop at delta.
Quiver higher_edge_example_squared();
Quiver single_loop();
Quiver two_disjoint_loops();

// Generators.

/// Vertices v0.., edges e0.. with uniformly random endpoints.
Quiver random_quiver(std::mt19937_64& rng, std::size_t min_vertices, std::size_t max_vertices,
                     std::size_t max_edges);
/// Random quiver with every vertex emitting at least once.
Quiver random_sink_free_quiver(std::mt19937_64& rng, std::size_t min_vertices,
                               std::size_t max_vertices, std::size_t max_edges);
/// Kept set satisfying the collapse hypotheses: a random subset, plus every
/// sink, plus one vertex from each cycle that still avoids it.
VertexSet random_valid_keep(const Quiver& q, std::mt19937_64& rng);

/// One representative per isomorphism class of quivers with 1..max_vertices
/// vertices and at most max_edges edges.
std::vector<Quiver> exhaustive_family(std::size_t max_vertices, std::size_t max_edges);

/// Partition with each fiber cut at random points.
Partition random_partition(const Quiver& q, std::mt19937_64& rng, Fiber fiber);

/// All subsets of the vertex set.
std::vector<VertexSet> all_subsets(const Quiver& q);

Path random_path(const Quiver& q, std::mt19937_64& rng, std::size_t max_length);
/// Random path ending at `end` (walks backwards).
Path random_path_to(const Quiver& q, std::mt19937_64& rng, std::size_t end, std::size_t max_length);
Monomial random_monomial(const Quiver& q, std::mt19937_64& rng, std::size_t max_length);
Element random_element(std::shared_ptr<const Quiver> q, std::mt19937_64& rng, std::size_t terms,
                       std::size_t max_length);

// Oracles, written directly from the definitions.

/// Every path of length <= max_length (trivial ones included).
std::vector<std::vector<std::size_t>> all_paths_from(const Quiver& q, std::size_t v,
                                                     std::size_t max_length);
/// B_v by enumerating all paths of bounded length.
std::size_t bridge_count_oracle(const Quiver& q, const VertexSet& keep, const std::string& v);
/// Acyclicity of the subquiver induced outside keep, by three-colour DFS.
bool cycles_meet_oracle(const Quiver& q, const VertexSet& keep);
bool reaches_oracle(const Quiver& q, std::size_t from, const std::vector<char>& target);
/// Smallest hereditary saturated superset: intersection over all subsets.
VertexSet closure_oracle(const Quiver& q, const VertexSet& x);
bool hereditary_oracle(const Quiver& q, const VertexSet& h);
bool saturated_oracle(const Quiver& q, const VertexSet& h);
/// Number of paths of length n, by dynamic programming over endpoints.
std::size_t path_count_oracle(const Quiver& q, std::size_t n);
/// Incidence matrix minimal under simultaneous permutations.
IntMatrix canonical_incidence(const IntMatrix& m);
bool isomorphic_oracle(const Quiver& a, const Quiver& b);
/// Some vertex permutation sending a to b, if one exists.
bool permutation_similar(const IntMatrix& a, const IntMatrix& b);

}  // namespace qlpa::testing
