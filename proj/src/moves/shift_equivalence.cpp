#include "qlpa/shift_equivalence.hpp"

#include <algorithm>
#include <set>

#include "qlpa/error.hpp"
#include "qlpa/quiver_io.hpp"

namespace qlpa {
namespace {

nlohmann::ordered_json theta_to_json(
    const std::map<std::string, std::pair<std::string, std::string>>& theta) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [e, path] : theta) j[e] = {path.first, path.second};
  return j;
}

std::map<std::string, std::pair<std::string, std::string>> theta_from_json(
    const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("theta must be an object edge -> [edge, edge]");
  std::map<std::string, std::pair<std::string, std::string>> theta;
  for (const auto& [e, path] : j.items()) {
    if (!path.is_array() || path.size() != 2 || !path[0].is_string() || !path[1].is_string())
      throw PreconditionError("theta image of '" + e + "' must be a pair of edge ids");
    theta[e] = {path[0].get<std::string>(), path[1].get<std::string>()};
  }
  return theta;
}

void check_theta(Report& report, const std::string& name, const Quiver& qi, const VertexSet& side,
                 const Quiver& bridge,
                 const std::map<std::string, std::pair<std::string, std::string>>& theta) {
  std::set<std::string> domain;
  for (const auto& [e, path] : theta) domain.insert(e);
  std::set<std::string> edges;
  for (const auto& e : qi.edges()) edges.insert(e.id);
  report.add(name + "-domain", domain == edges,
             domain == edges ? "" : "theta keys differ from the edge set");

  std::string bad_path, bad_end;
  std::set<std::pair<std::string, std::string>> image;
  for (const auto& [e, path] : theta) {
    auto first = bridge.find_edge(path.first);
    auto second = bridge.find_edge(path.second);
    if (!first || !second || bridge.range(*first) != bridge.source(*second) ||
        !side.count(bridge.vertex(bridge.source(*first))) ||
        !side.count(bridge.vertex(bridge.range(*second)))) {
      if (bad_path.empty()) bad_path = e;
      continue;
    }
    image.insert(path);
    auto ei = qi.find_edge(e);
    if (!ei || qi.edge(*ei).src != bridge.edge(*first).src ||
        qi.edge(*ei).dst != bridge.edge(*second).dst) {
      if (bad_end.empty()) bad_end = e;
    }
  }
  report.add(name + "-paths", bad_path.empty(),
             bad_path.empty() ? "" : "image of '" + bad_path + "' is not a length-2 path within the side");
  report.add(name + "-endpoints", bad_path.empty() && bad_end.empty(),
             bad_end.empty() ? "" : "image of '" + bad_end + "' changes source or range");

  std::set<std::pair<std::string, std::string>> target;
  for (const auto& a : bridge.edges()) {
    if (!side.count(a.src)) continue;
    for (std::size_t b : bridge.out_edges(bridge.vertex_index(a.dst)))
      if (side.count(bridge.edge(b).dst)) target.insert({a.id, bridge.edge(b).id});
  }
  bool bijective = image.size() == theta.size() && image == target;
  report.add(name + "-bijective", bijective,
             bijective ? "" : std::to_string(image.size()) + " distinct images for " +
                                  std::to_string(theta.size()) + " edges; " +
                                  std::to_string(target.size()) + " length-2 paths available");
}

void require_nonnegative(const IntMatrix& m, const char* name) {
  if (!m.nonnegative()) throw PreconditionError(std::string(name) + " has a negative entry");
}

}  // namespace

nlohmann::ordered_json esse_witness_to_json(const EsseWitness& w) {
  nlohmann::ordered_json j;
  j["bridge"] = quiver_to_json(w.bridge);
  j["side1"] = vertex_set_to_json(w.side1);
  j["side2"] = vertex_set_to_json(w.side2);
  j["theta1"] = theta_to_json(w.theta1);
  j["theta2"] = theta_to_json(w.theta2);
  return j;
}

EsseWitness esse_witness_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("ESSE witness must be an object");
  for (const char* key : {"bridge", "side1", "side2", "theta1", "theta2"})
    if (!j.contains(key)) throw PreconditionError(std::string("ESSE witness lacks \"") + key + "\"");
  return {quiver_from_json(j.at("bridge")), vertex_set_from_json(j.at("side1")),
          vertex_set_from_json(j.at("side2")), theta_from_json(j.at("theta1")),
          theta_from_json(j.at("theta2"))};
}

Report verify_esse(const Quiver& q1, const Quiver& q2, const EsseWitness& w) {
  Report report;
  VertexSet both;
  std::set_intersection(w.side1.begin(), w.side1.end(), w.side2.begin(), w.side2.end(),
                        std::inserter(both, both.end()));
  VertexSet all = w.side1;
  all.insert(w.side2.begin(), w.side2.end());
  bool partition = both.empty() && all == w.bridge.vertex_set() && w.side1 == q1.vertex_set() &&
                   w.side2 == q2.vertex_set();
  report.add("vertex-partition", partition,
             partition ? "" : "bridge vertices are not the disjoint union of the two vertex sets");

  std::string intra;
  for (const auto& e : w.bridge.edges()) {
    bool crosses = (w.side1.count(e.src) && w.side2.count(e.dst)) ||
                   (w.side2.count(e.src) && w.side1.count(e.dst));
    if (!crosses) {
      intra = e.id;
      break;
    }
  }
  report.add("edge-split", intra.empty(),
             intra.empty() ? "" : "edge '" + intra + "' does not cross between the sides");

  check_theta(report, "theta1", q1, w.side1, w.bridge, w.theta1);
  check_theta(report, "theta2", q2, w.side2, w.bridge, w.theta2);
  return report;
}

EsseConstruction esse_from_factorization(const IntMatrix& l, const IntMatrix& r) {
  if (l.rows() != r.cols() || l.cols() != r.rows())
    throw DimensionError("L is " + std::to_string(l.rows()) + "x" + std::to_string(l.cols()) +
                         " but R is " + std::to_string(r.rows()) + "x" + std::to_string(r.cols()));
  require_nonnegative(l, "L");
  require_nonnegative(r, "R");
  const std::size_t p = l.rows(), k = l.cols();
  const IntMatrix lr = l * r, rl = r * l;

  EsseConstruction out;
  out.q1 = from_incidence(lr, "a", "x");
  out.q2 = from_incidence(rl, "b", "y");

  IntMatrix block(p + k, p + k);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      block(i, p + j) = l(i, j);
      block(p + j, i) = r(j, i);
    }
  auto a_name = [&](std::size_t i) { return incidence_vertex_name(lr, "a", i); };
  auto b_name = [&](std::size_t j) { return incidence_vertex_name(rl, "b", j); };
  auto l_edge = [&](std::size_t i, std::size_t j, std::int64_t t) {
    return incidence_edge_name(block, "l", i, j, static_cast<std::size_t>(t));
  };
  auto r_edge = [&](std::size_t j, std::size_t i, std::int64_t t) {
    return incidence_edge_name(block, "r", j, i, static_cast<std::size_t>(t));
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < p; ++i) vertices.push_back(a_name(i));
  for (std::size_t j = 0; j < k; ++j) vertices.push_back(b_name(j));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      for (std::int64_t t = 0; t < l(i, j); ++t) edges.push_back({l_edge(i, j, t), a_name(i), b_name(j)});
      for (std::int64_t t = 0; t < r(j, i); ++t) edges.push_back({r_edge(j, i, t), b_name(j), a_name(i)});
    }
  out.witness.bridge = Quiver(std::move(vertices), std::move(edges));
  out.witness.side1 = out.q1.vertex_set();
  out.witness.side2 = out.q2.vertex_set();

  // a_i -> b_j -> a_m paths, enumerated by (j, first copy, second copy).
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t m = 0; m < p; ++m) {
      std::int64_t t = 0;
      for (std::size_t j = 0; j < k; ++j)
        for (std::int64_t s = 0; s < l(i, j); ++s)
          for (std::int64_t u = 0; u < r(j, m); ++u)
            out.witness.theta1[incidence_edge_name(lr, "x", i, m, static_cast<std::size_t>(t++))] =
                {l_edge(i, j, s), r_edge(j, m, u)};
    }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t m = 0; m < k; ++m) {
      std::int64_t t = 0;
      for (std::size_t i = 0; i < p; ++i)
        for (std::int64_t s = 0; s < r(j, i); ++s)
          for (std::int64_t u = 0; u < l(i, m); ++u)
            out.witness.theta2[incidence_edge_name(rl, "y", j, m, static_cast<std::size_t>(t++))] =
                {r_edge(j, i, s), l_edge(i, m, u)};
    }
  return out;
}

namespace {

class FactorSearch {
 public:
  FactorSearch(const IntMatrix& a, const IntMatrix& b, std::int64_t bound, std::uint64_t budget)
      : a_(a), b_(b), bound_(bound), budget_(budget), p_(a.rows()), k_(b.rows()),
        l_(p_, k_), r_(k_, p_) {}

  std::optional<Factorization> run() {
    if (search_l(0)) return Factorization{l_, best_r_};
    return std::nullopt;
  }

 private:
  void tick() {
    if (++work_ > budget_)
      throw ResourceError("factorization search exceeded its budget of " +
                          std::to_string(budget_) + " nodes");
  }

  // L is enumerated row-major in increasing lexicographic order; the first L
  // admitting some R wins, paired with its least R.
  bool search_l(std::size_t pos) {
    tick();
    if (pos == p_ * k_) {
      found_r_ = false;
      search_r(0);
      if (found_r_) best_r_ = r_;
      return found_r_;
    }
    for (std::int64_t v = 0; v <= bound_; ++v) {
      l_(pos / k_, pos % k_) = v;
      if (search_l(pos + 1)) return true;
    }
    l_(pos / k_, pos % k_) = 0;
    return false;
  }

  // R row-major. After fixing R(j, c), the partial products of column c of
  // LR and of row j of RL must not exceed a and b; completed rows and
  // columns must match exactly.
  void search_r(std::size_t pos) {
    tick();
    if (found_r_) return;
    if (pos == k_ * p_) {
      found_r_ = true;
      return;
    }
    const std::size_t j = pos / p_, c = pos % p_;
    for (std::int64_t v = 0; v <= bound_; ++v) {
      r_(j, c) = v;
      if (feasible(j, c)) search_r(pos + 1);
      if (found_r_) return;
    }
    r_(j, c) = 0;
  }

  bool feasible(std::size_t j, std::size_t c) const {
    for (std::size_t i = 0; i < p_; ++i) {
      std::int64_t sum = 0;
      for (std::size_t t = 0; t <= j; ++t) sum += l_(i, t) * r_(t, c);
      if (sum > a_(i, c) || (j + 1 == k_ && sum != a_(i, c))) return false;
    }
    for (std::size_t m = 0; m < k_; ++m) {
      std::int64_t sum = 0;
      for (std::size_t t = 0; t <= c; ++t) sum += r_(j, t) * l_(t, m);
      if (sum > b_(j, m) || (c + 1 == p_ && sum != b_(j, m))) return false;
    }
    return true;
  }

  const IntMatrix& a_;
  const IntMatrix& b_;
  std::int64_t bound_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  std::size_t p_, k_;
  IntMatrix l_, r_, best_r_;
  bool found_r_ = false;
};

}  // namespace

std::optional<Factorization> find_esse_factorization(const IntMatrix& a, const IntMatrix& b,
                                                     std::int64_t entry_bound,
                                                     std::size_t dim_bound,
                                                     std::uint64_t work_budget) {
  if (!a.square() || !b.square()) throw DimensionError("both matrices must be square");
  require_nonnegative(a, "A");
  require_nonnegative(b, "B");
  if (entry_bound < 0) throw PreconditionError("entry bound must be nonnegative");
  if (b.rows() > dim_bound) return std::nullopt;
  // tr((LR)^n) = tr((RL)^n), so differing traces rule out any factorization.
  IntMatrix ap = a, bp = b;
  for (int n = 1; n <= 3; ++n) {
    if (ap.trace() != bp.trace()) return std::nullopt;
    ap = ap * a;
    bp = bp * b;
  }
  // Keeps every partial sum of entry_bound^2-sized terms well inside int64.
  if (entry_bound > 1'000'000)
    throw ResourceError("entry bound too large for exact int64 search");
  return FactorSearch(a, b, entry_bound, work_budget).run();
}

Report verify_shift_equivalence(const IntMatrix& a, const IntMatrix& b,
                                const ShiftEquivalenceWitness& w) {
  const IntMatrix& c = w.c;
  const IntMatrix& d = w.d;
  if (!a.square() || !b.square() || c.rows() != a.rows() || c.cols() != b.rows() ||
      d.rows() != b.rows() || d.cols() != a.rows())
    throw DimensionError("shift equivalence needs A n x n, B m x m, C n x m, D m x n");
  Report report;
  bool nonneg = c.nonnegative() && d.nonnegative();
  report.add("nonnegative", nonneg, nonneg ? "" : "C or D has a negative entry");
  report.add("lag>=1", w.lag >= 1, w.lag >= 1 ? "" : "lag is 0");
  unsigned lag = std::max(w.lag, 1u);
  report.add("A^n=CD", a.power(lag) == c * d);
  report.add("B^n=DC", b.power(lag) == d * c);
  report.add("AC=CB", a * c == c * b);
  report.add("DA=BD", d * a == b * d);
  return report;
}

ShiftEquivalenceWitness shift_equivalence_from_chain(const std::vector<Factorization>& chain) {
  if (chain.empty()) throw PreconditionError("empty factorization chain");
  ShiftEquivalenceWitness w{chain.front().l, chain.front().r,
                            static_cast<unsigned>(chain.size())};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    w.c = w.c * chain[i].l;
    w.d = chain[i].r * w.d;
  }
  return w;
}

}  // namespace qlpa
