#include "qlpa/grading.hpp"

#include <algorithm>
#include <limits>

namespace qlpa {

Grading Grading::standard(const Quiver& q) {
  Grading g;
  for (const auto& e : q.edges()) g.numerators[e.id] = 1;
  return g;
}

mpq_class Grading::weight(const std::string& edge) const {
  auto it = numerators.find(edge);
  if (it == numerators.end()) throw UnknownId("grading has no weight for edge '" + edge + "'");
  mpq_class w(static_cast<long>(it->second), static_cast<unsigned long>(denominator));
  w.canonicalize();
  return w;
}

nlohmann::ordered_json grading_to_json(const Grading& g) {
  nlohmann::ordered_json j;
  j["denominator"] = g.denominator;
  j["weights"] = nlohmann::ordered_json::object();
  for (const auto& [e, n] : g.numerators) {
    mpq_class w(static_cast<long>(n), static_cast<unsigned long>(g.denominator));
    w.canonicalize();
    j["weights"][e] = scalar_to_string(w);
  }
  return j;
}

mpq_class monomial_degree(const Quiver& q, const Grading& g, const Monomial& m) {
  mpq_class d = 0;
  for (std::size_t e : m.p.edges) d += g.weight(q.edge(e).id);
  for (std::size_t e : m.q.edges) d -= g.weight(q.edge(e).id);
  return d;
}

std::optional<mpq_class> degree(const Element& a, const Grading& g) {
  Element nf = normal_form(a);
  std::optional<mpq_class> common;
  for (const auto& [m, c] : nf.terms()) {
    mpq_class d = monomial_degree(a.quiver(), g, m);
    if (common && *common != d) return std::nullopt;
    common = d;
  }
  return common;
}

namespace {

class PositiveSearch {
 public:
  PositiveSearch(std::size_t variables, const std::vector<LinearConstraint>& constraints,
                 std::uint64_t budget)
      : constraints_(constraints), budget_(budget), by_var_(variables), value_(variables, 0),
        partial_(constraints.size(), 0), remaining_(constraints.size(), 0) {
    for (std::size_t c = 0; c < constraints.size(); ++c)
      for (const auto& [x, coeff] : constraints[c].terms) {
        if (x >= variables || coeff <= 0)
          throw PreconditionError("constraint '" + constraints[c].label + "' is malformed");
        by_var_[x].push_back({c, coeff});
        remaining_[c] += coeff;
      }
  }

  std::optional<std::vector<std::int64_t>> run() {
    for (std::size_t c = 0; c < constraints_.size(); ++c)
      if (remaining_[c] > constraints_[c].rhs) return std::nullopt;
    if (assign(0)) return value_;
    return std::nullopt;
  }

 private:
  bool assign(std::size_t x) {
    if (++work_ > budget_)
      throw ResourceError("grading search exceeded its budget of " + std::to_string(budget_) +
                          " nodes");
    if (x == value_.size()) return true;
    std::int64_t hi = by_var_[x].empty() ? 1 : std::numeric_limits<std::int64_t>::max();
    for (const auto& [c, coeff] : by_var_[x]) {
      std::int64_t slack = constraints_[c].rhs - partial_[c] - (remaining_[c] - coeff);
      hi = std::min(hi, slack / coeff);
    }
    for (std::int64_t v = 1; v <= hi; ++v) {
      bool ok = true;
      for (const auto& [c, coeff] : by_var_[x]) {
        partial_[c] += coeff * v;
        remaining_[c] -= coeff;
        if (remaining_[c] == 0 && partial_[c] != constraints_[c].rhs) ok = false;
      }
      value_[x] = v;
      if (ok && assign(x + 1)) return true;
      for (const auto& [c, coeff] : by_var_[x]) {
        partial_[c] -= coeff * v;
        remaining_[c] += coeff;
      }
    }
    value_[x] = 0;
    return false;
  }

  const std::vector<LinearConstraint>& constraints_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> by_var_;
  std::vector<std::int64_t> value_;
  std::vector<std::int64_t> partial_, remaining_;
};

}  // namespace

std::optional<std::vector<std::int64_t>> solve_positive_system(
    std::size_t variables, const std::vector<LinearConstraint>& constraints,
    std::uint64_t work_budget) {
  return PositiveSearch(variables, constraints, work_budget).run();
}

std::vector<LinearConstraint> minimal_infeasible_subset(std::size_t variables,
                                                        std::vector<LinearConstraint> constraints) {
  if (solve_positive_system(variables, constraints))
    throw PreconditionError("constraint system is feasible");
  for (std::size_t i = constraints.size(); i-- > 0;) {
    std::vector<LinearConstraint> without = constraints;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (!solve_positive_system(variables, without)) constraints = std::move(without);
  }
  return constraints;
}

Grading solve_collapse_grading(const Quiver& q, const CollapseResult& c) {
  const auto n = static_cast<std::int64_t>(c.n_max);
  std::vector<char> on_path(q.edge_count(), 0);
  for (const auto& [id, path] : c.edge_origin) {
    if (!q.is_valid_path(path))
      throw PreconditionError("collapse result does not belong to this quiver");
    for (std::size_t e : path.edges) on_path[e] = 1;
  }
  // Variables are the edges lying on some origin path, in edge-id order.
  std::vector<std::size_t> var_of(q.edge_count(), 0);
  std::vector<std::size_t> edge_of;
  for (std::size_t e = 0; e < q.edge_count(); ++e)
    if (on_path[e]) {
      var_of[e] = edge_of.size();
      edge_of.push_back(e);
    }
  std::vector<LinearConstraint> constraints;
  for (const auto& [id, path] : c.edge_origin) {
    LinearConstraint lc{q.path_to_string(path), {}, n};
    std::map<std::size_t, std::int64_t> count;
    for (std::size_t e : path.edges) ++count[var_of[e]];
    lc.terms.assign(count.begin(), count.end());
    constraints.push_back(std::move(lc));
  }

  auto solution = solve_positive_system(edge_of.size(), constraints);
  if (!solution) {
    std::vector<std::string> core;
    std::string listing;
    for (const auto& lc : minimal_infeasible_subset(edge_of.size(), constraints)) {
      core.push_back(lc.label);
      listing += (listing.empty() ? "" : "; ") + lc.label;
    }
    throw GradingInfeasible("no positive (1/" + std::to_string(n) +
                                ")Z weights give every origin path weight 1; conflicting paths: " +
                                listing,
                            std::move(core));
  }
  Grading g;
  g.denominator = n;
  for (std::size_t e = 0; e < q.edge_count(); ++e)
    g.numerators[q.edge(e).id] = on_path[e] ? (*solution)[var_of[e]] : n;
  return g;
}

}  // namespace qlpa
