#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlpa/matrix.hpp"
#include "qlpa/quiver.hpp"
#include "qlpa/report.hpp"

namespace qlpa {

/// Q1 ~ES Q2 via a bridging quiver Q3 on the vertex set Q1^0 + Q2^0.
/// theta_i sends each edge of Q_i to a length-2 path of Q3 (first edge id,
/// second edge id) that starts and ends in Q_i^0.
struct EsseWitness {
  Quiver bridge;
  VertexSet side1, side2;
  std::map<std::string, std::pair<std::string, std::string>> theta1, theta2;
};

nlohmann::ordered_json esse_witness_to_json(const EsseWitness& w);
EsseWitness esse_witness_from_json(const nlohmann::json& j);

/// Named checks: vertex-partition, edge-split, and for i = 1, 2:
/// theta<i>-domain, theta<i>-paths, theta<i>-endpoints, theta<i>-bijective.
Report verify_esse(const Quiver& q1, const Quiver& q2, const EsseWitness& w);

struct EsseConstruction {
  Quiver q1;  // incidence L*R, vertices a<i>, edges x<i>_<j>_<k>
  Quiver q2;  // incidence R*L, vertices b<j>, edges y<j>_<i>_<k>
  EsseWitness witness;
};

/// Bridging quiver has L-edges a<i> -> b<j> (ids l..) and R-edges b<j> -> a<i>
/// (ids r..). The t-th Q1 edge from a<i> to a<k> is sent to the t-th
/// length-2 path a<i> -> b -> a<k> in lexicographic order, likewise for Q2.
/// Throws DimensionError unless L is p x q and R is q x p, PreconditionError
/// on negative entries.
EsseConstruction esse_from_factorization(const IntMatrix& l, const IntMatrix& r);

struct Factorization {
  IntMatrix l, r;
};

/// Lexicographically least (L, R), compared as L row-major then R row-major,
/// with entries in [0, entry_bound] such that a = LR and b = RL. The inner
/// dimension is forced to dim(b); nullopt when that exceeds dim_bound or no
/// factorization exists within the bounds. Throws ResourceError when the
/// search would visit more than `work_budget` nodes.
std::optional<Factorization> find_esse_factorization(const IntMatrix& a, const IntMatrix& b,
                                                     std::int64_t entry_bound,
                                                     std::size_t dim_bound,
                                                     std::uint64_t work_budget = 50'000'000);

struct ShiftEquivalenceWitness {
  IntMatrix c, d;
  unsigned lag = 1;
};

/// Named checks: nonnegative, lag>=1, A^n=CD, B^n=DC, AC=CB, DA=BD.
/// Throws DimensionError when the shapes do not fit together.
Report verify_shift_equivalence(const IntMatrix& a, const IntMatrix& b,
                                const ShiftEquivalenceWitness& w);

/// For a chain A_0 = L_1 R_1, R_i L_i = L_{i+1} R_{i+1}, ..., the lag-n
/// witness C = L_1 ... L_n, D = R_n ... R_1 between A_0 and R_n L_n.
ShiftEquivalenceWitness shift_equivalence_from_chain(const std::vector<Factorization>& chain);

}  // namespace qlpa
