#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "qlpa/quiver.hpp"

namespace qlpa {

struct IsoWitness {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;
};

enum class IsoStatus { Isomorphic, NotIsomorphic, Undecided };

struct IsoResult {
  IsoStatus status = IsoStatus::Undecided;
  std::optional<IsoWitness> witness;
  std::string reason;

  bool isomorphic() const { return status == IsoStatus::Isomorphic; }
};

inline constexpr std::size_t kIsoVertexBound = 10;

/// Exact for quivers with at most `max_vertices` vertices (backtracking over
/// vertex bijections pruned by degree profiles and adjacency counts). Larger
/// inputs that pass the cheap invariants come back Undecided.
IsoResult is_isomorphic(const Quiver& a, const Quiver& b,
                        std::size_t max_vertices = kIsoVertexBound);

/// Checks that `w` is a pair of bijections a -> b preserving source and range.
bool verify_isomorphism(const Quiver& a, const Quiver& b, const IsoWitness& w);

}  // namespace qlpa
