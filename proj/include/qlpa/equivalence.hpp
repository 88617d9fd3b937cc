#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qlpa/element.hpp"
#include "qlpa/moves.hpp"
#include "qlpa/report.hpp"

namespace qlpa {

/// Checks keep-nonempty, keep-subset, sinks-in-keep, cycles-meet-keep and
/// the derived dropped-reach-keep (every vertex outside keep reaches it).
Report check_collapse_preconditions(const Quiver& q, const VertexSet& keep);

/// q_v = v for kept v, T_{e_mu} = mu, all inside L_k(Q).
struct QPrimeFamily {
  std::map<std::string, Element> q;  // kept vertex -> q_v
  std::map<std::string, Element> t;  // Q' edge id -> T_e
};

QPrimeFamily q_prime_family(std::shared_ptr<const Quiver> q, Field f, const CollapseResult& c);

/// Relations of a Q'-family, checked by normal form in L_k(Q):
///   nonzero(v), idempotent(v), orthogonal(v,w),
///   source(e): q_{s(e)} T = T,  range(e): T q_{r(e)} = T,
///   ghost-source(e): q_{r(e)} T* = T*,  ghost-range(e): T* q_{s(e)} = T*,
///   ghost-product(e,f): T_e* T_f = [e = f] q_{r(e)},
///   ck2(v): q_v = sum over e in s'^{-1}(v) of T_e T_e*, for regular v of Q'.
Report verify_q_prime_family(std::shared_ptr<const Quiver> q, const CollapseResult& c,
                             Field f = Field::rationals());

/// Bridge-path facts for every vertex v of q:
///   empty-implies-kept(v): B_v empty => v in keep,
///   nonempty-implies-regular(v): B_v nonempty => v emits,
///   bridge-identity(v): v = sum over B_v of alpha alpha* (when B_v nonempty).
/// Without the collapse preconditions empty-implies-kept can fail.
Report verify_bridge_identities(std::shared_ptr<const Quiver> q, const VertexSet& keep,
                                Field f = Field::rationals());

struct FullnessResult {
  bool full = false;
  ClosureTrace trace;
};
/// Full iff the hereditary saturated closure of keep is every vertex.
FullnessResult verify_fullness(const Quiver& q, const VertexSet& keep);

/// Letters of words over the Q'-family.
struct CornerLetter {
  enum class Kind { T, TStar, Q };
  Kind kind;
  std::string id;  // Q' edge id, or kept vertex for Q
  auto operator<=>(const CornerLetter&) const = default;
};
using CornerWord = std::vector<CornerLetter>;

struct CornerExpansion {
  std::vector<std::pair<CornerWord, mpq_class>> terms;
};

/// Rewrites p q* (s(p), s(q) in keep) as a combination of words in T, T*, q_v.
/// When r(p) is kept, p and q are cut at each return to keep. Otherwise p is
/// split as alpha beta at the last edge leaving keep (likewise q = gamma
/// delta) and beta delta* is expanded as the sum over eta in B_{r(p)} of
/// T_{beta eta} T_{delta eta}*. Throws PreconditionError on bad input and
/// InternalError if a required Q' edge is missing.
CornerExpansion express_in_corner(const Quiver& q, const CollapseResult& c, const Monomial& m);

/// T_e -> origin path, T_e* -> its ghost, q_v -> v.
Element substitute(const CornerExpansion& x, std::shared_ptr<const Quiver> q, Field f,
                   const CollapseResult& c);

std::string to_string(const CornerExpansion& x);

}  // namespace qlpa
