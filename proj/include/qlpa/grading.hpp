#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "qlpa/element.hpp"
#include "qlpa/error.hpp"
#include "qlpa/moves.hpp"

namespace qlpa {

/// Edge weights in (1/denominator)Z, stored as integer numerators. Vertices
/// have weight 0 and ghost edges the negated weight.
struct Grading {
  std::int64_t denominator = 1;
  std::map<std::string, std::int64_t> numerators;

  /// Every edge weight 1.
  static Grading standard(const Quiver& q);
  mpq_class weight(const std::string& edge) const;
};

nlohmann::ordered_json grading_to_json(const Grading& g);

/// Sum of the weights of p minus that of q.
mpq_class monomial_degree(const Quiver& q, const Grading& g, const Monomial& m);
/// Common degree of the normal form's monomials; nullopt when they disagree
/// or the element is zero.
std::optional<mpq_class> degree(const Element& a, const Grading& g);

/// One linear constraint sum(coeff * x_var) = rhs over positive integers.
struct LinearConstraint {
  std::string label;
  std::vector<std::pair<std::size_t, std::int64_t>> terms;  // variable, coefficient > 0
  std::int64_t rhs = 0;
};

class GradingInfeasible : public Error {
 public:
  GradingInfeasible(const std::string& what, std::vector<std::string> core)
      : Error(what), core_(std::move(core)) {}
  /// Labels of a minimal set of constraints that has no positive solution.
  const std::vector<std::string>& core() const { return core_; }
  const char* kind() const noexcept override { return "grading_infeasible"; }

 private:
  std::vector<std::string> core_;
};

/// Lexicographically least vector of positive integers satisfying every
/// constraint, or nullopt. Throws ResourceError past `work_budget` nodes.
std::optional<std::vector<std::int64_t>> solve_positive_system(
    std::size_t variables, const std::vector<LinearConstraint>& constraints,
    std::uint64_t work_budget = 20'000'000);

/// Deletion filter: a subset of `constraints` that is infeasible and stays
/// feasible after removing any single member. Requires an infeasible input.
std::vector<LinearConstraint> minimal_infeasible_subset(
    std::size_t variables, std::vector<LinearConstraint> constraints);

/// Weights in (1/n_max)Z such that every origin path has total weight 1 and
/// edges on no origin path weigh 1. Among the positive solutions the least
/// in edge-id order is returned; none existing raises GradingInfeasible.
Grading solve_collapse_grading(const Quiver& q, const CollapseResult& c);

}  // namespace qlpa
