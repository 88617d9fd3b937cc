#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace qlpa::testing {

Quiver make_quiver(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
  std::vector<Edge> es;
  for (const auto& [id, s, r] : edges) es.push_back({id, s, r});
  return Quiver(std::move(vertices), std::move(es));
}

Quiver line_quiver() { return make_quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}); }

Quiver two_cycle() { return make_quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}}); }

Quiver funnel_quiver(std::size_t m, std::size_t n) {
  std::vector<std::string> vs{"A", "B"};
  std::vector<EdgeSpec> es;
  for (std::size_t i = 1; i <= n; ++i) {
    std::string v = "v" + std::to_string(i);
    vs.push_back(v);
    es.push_back({"in_" + v, "A", v});
    es.push_back({"out_" + v, v, "B"});
  }
  for (std::size_t j = 1; j <= m; ++j) {
    std::string u = "u" + std::to_string(j);
    vs.push_back(u);
    es.push_back({"in_" + u, "B", u});
    es.push_back({"out_" + u, u, "A"});
  }
  return make_quiver(vs, es);
}

Quiver fan_quiver(std::size_t m, std::size_t n) {
  std::vector<std::string> vs{"A", "B", "c"};
  std::vector<EdgeSpec> es{{"down", "B", "c"}, {"up", "c", "A"}};
  auto spoke = [&](const std::string& v) {
    vs.push_back(v);
    es.push_back({"in_" + v, "A", v});
    es.push_back({"out_" + v, v, "B"});
  };
  for (std::size_t i = 1; i <= n; ++i) spoke("v" + std::to_string(i));
  for (std::size_t j = 1; j <= m; ++j) spoke("u" + std::to_string(j));
  return make_quiver(vs, es);
}

Quiver esse_q1() {
  return make_quiver({"a1", "a2"}, {{"x", "a1", "a2"}, {"y", "a2", "a2"}});
}

Quiver esse_q2() {
  return make_quiver({"b1", "b2"}, {{"p", "b1", "b2"}, {"q", "b1", "b2"}, {"z", "b2", "b2"}});
}

Quiver esse_q3() {
  return make_quiver({"a1", "a2", "b1", "b2"}, {{"r1", "b1", "a1"},
                                                {"r2", "b1", "a1"},
                                                {"l1", "a1", "b2"},
                                                {"r3", "b2", "a2"},
                                                {"l2", "a2", "b2"}});
}

Quiver higher_edge_example() {
  return make_quiver({"L", "R", "T"}, {{"alpha", "L", "T"},
                                       {"beta", "T", "R"},
                                       {"gamma", "L", "R"},
                                       {"delta", "R", "R"}});
}

Quiver higher_edge_example_squared() {
  return make_quiver({"alpha", "beta", "gamma", "delta"}, {{"ab", "alpha", "beta"},
                                                           {"bd", "beta", "delta"},
                                                           {"gd", "gamma", "delta"},
                                                           {"dd", "delta", "delta"}});
}

Quiver single_loop() { return make_quiver({"v"}, {{"e", "v", "v"}}); }

Quiver two_disjoint_loops() {
  return make_quiver({"u", "v"}, {{"e", "u", "u"}, {"f", "v", "v"}});
}

namespace {

std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  return vs;
}

std::string edge_name(std::size_t i) {
  std::string s = std::to_string(i);
  return "e" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

}  // namespace

Quiver random_quiver(std::mt19937_64& rng, std::size_t min_vertices, std::size_t max_vertices,
                     std::size_t max_edges) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(min_vertices, max_vertices)(rng);
  std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_edges)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto vs = vertex_names(n);
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < m; ++i) es.push_back({edge_name(i), vs[pick(rng)], vs[pick(rng)]});
  return make_quiver(vs, es);
}

Quiver random_sink_free_quiver(std::mt19937_64& rng, std::size_t min_vertices,
                               std::size_t max_vertices, std::size_t max_edges) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(min_vertices, max_vertices)(rng);
  std::size_t m = std::uniform_int_distribution<std::size_t>(n, std::max(n, max_edges))(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto vs = vertex_names(n);
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < n; ++i) es.push_back({edge_name(i), vs[i], vs[pick(rng)]});
  for (std::size_t i = n; i < m; ++i) es.push_back({edge_name(i), vs[pick(rng)], vs[pick(rng)]});
  return make_quiver(vs, es);
}

namespace {

// A cycle inside the subquiver induced outside `keep`, as vertex indices.
std::vector<std::size_t> cycle_outside(const Quiver& q, const std::vector<char>& kept) {
  const std::size_t n = q.vertex_count();
  std::vector<int> colour(n, 0);
  std::vector<std::size_t> parent(n, n), found;
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    colour[v] = 1;
    for (std::size_t e : q.out_edges(v)) {
      std::size_t w = q.range(e);
      if (kept[w]) continue;
      if (colour[w] == 1) {
        found.push_back(w);
        for (std::size_t x = v; x != w; x = parent[x]) found.push_back(x);
        return true;
      }
      if (colour[w] == 0) {
        parent[w] = v;
        if (dfs(w)) return true;
      }
    }
    colour[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v)
    if (!kept[v] && colour[v] == 0 && dfs(v)) return found;
  return {};
}

}  // namespace

VertexSet random_valid_keep(const Quiver& q, std::mt19937_64& rng) {
  std::vector<char> kept(q.vertex_count(), 0);
  std::bernoulli_distribution coin(0.4);
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    kept[v] = coin(rng) || q.out_edges(v).empty();
  for (auto c = cycle_outside(q, kept); !c.empty(); c = cycle_outside(q, kept))
    kept[c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]] = 1;
  VertexSet keep;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (kept[v]) keep.insert(q.vertex(v));
  if (keep.empty()) keep.insert(q.vertex(0));
  return keep;
}

IntMatrix canonical_incidence(const IntMatrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  IntMatrix best = m;
  auto key = [](const IntMatrix& x) {
    std::vector<std::int64_t> k;
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) k.push_back(x(i, j));
    return k;
  };
  auto best_key = key(best);
  do {
    IntMatrix p = m.permuted(perm);
    auto k = key(p);
    if (k < best_key) {
      best = p;
      best_key = k;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool permutation_similar(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         canonical_incidence(a) == canonical_incidence(b);
}

bool isomorphic_oracle(const Quiver& a, const Quiver& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         permutation_similar(incidence(a), incidence(b));
}

std::vector<Quiver> exhaustive_family(std::size_t max_vertices, std::size_t max_edges) {
  std::vector<Quiver> out;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::int64_t> cells(n * n, 0);
    // Enumerate every matrix with entry sum <= max_edges.
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t left) {
      if (i == cells.size()) {
        IntMatrix m(n, n);
        for (std::size_t k = 0; k < cells.size(); ++k) m(k / n, k % n) = cells[k];
        IntMatrix c = canonical_incidence(m);
        std::vector<std::int64_t> key;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = 0; s < n; ++s) key.push_back(c(r, s));
        if (seen.insert(key).second) out.push_back(from_incidence(c, "v", "e"));
        return;
      }
      for (std::size_t x = 0; x <= left; ++x) {
        cells[i] = static_cast<std::int64_t>(x);
        fill(i + 1, left - x);
      }
      cells[i] = 0;
    };
    fill(0, max_edges);
  }
  return out;
}

std::vector<VertexSet> all_subsets(const Quiver& q) {
  std::vector<VertexSet> out;
  const std::size_t n = q.vertex_count();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    VertexSet s;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) s.insert(q.vertex(v));
    out.push_back(std::move(s));
  }
  return out;
}

Path random_path(const Quiver& q, std::mt19937_64& rng, std::size_t max_length) {
  Path p{std::uniform_int_distribution<std::size_t>(0, q.vertex_count() - 1)(rng), {}};
  std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_length)(rng);
  std::size_t at = p.start;
  while (p.edges.size() < len && !q.out_edges(at).empty()) {
    const auto& out = q.out_edges(at);
    std::size_t e = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    p.edges.push_back(e);
    at = q.range(e);
  }
  return p;
}

Path random_path_to(const Quiver& q, std::mt19937_64& rng, std::size_t end,
                    std::size_t max_length) {
  std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_length)(rng);
  std::vector<std::size_t> rev;
  std::size_t at = end;
  while (rev.size() < len && !q.in_edges(at).empty()) {
    const auto& in = q.in_edges(at);
    std::size_t e = in[std::uniform_int_distribution<std::size_t>(0, in.size() - 1)(rng)];
    rev.push_back(e);
    at = q.source(e);
  }
  return Path{at, {rev.rbegin(), rev.rend()}};
}

Monomial random_monomial(const Quiver& q, std::mt19937_64& rng, std::size_t max_length) {
  Path p = random_path(q, rng, max_length);
  Path r = random_path_to(q, rng, q.path_range(p), max_length);
  return Monomial{p, r};
}

Element random_element(std::shared_ptr<const Quiver> q, std::mt19937_64& rng, std::size_t terms,
                       std::size_t max_length) {
  Element x(q, Field::rationals());
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t i = 0; i < terms; ++i) {
    int c = coeff(rng);
    x.add_term(random_monomial(*q, rng, max_length), c == 0 ? 1 : c);
  }
  return x;
}

std::vector<std::vector<std::size_t>> all_paths_from(const Quiver& q, std::size_t v,
                                                     std::size_t max_length) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> go = [&](std::size_t at) {
    if (cur.size() == max_length) return;
    for (std::size_t e : q.out_edges(at)) {
      cur.push_back(e);
      out.push_back(cur);
      go(q.range(e));
      cur.pop_back();
    }
  };
  go(v);
  return out;
}

std::size_t bridge_count_oracle(const Quiver& q, const VertexSet& keep, const std::string& v) {
  std::size_t max_out = 0;
  for (std::size_t w = 0; w < q.vertex_count(); ++w) max_out = std::max(max_out, q.out_edges(w).size());
  std::size_t bound = std::max<std::size_t>(1, q.vertex_count() * max_out);
  // Extend only through vertices outside keep; a path stops when it lands
  // in keep, since a bridge path's interior avoids it.
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t at, std::size_t len) {
    if (len == bound) return;
    for (std::size_t e : q.out_edges(at)) {
      if (keep.count(q.vertex(q.range(e))))
        ++count;
      else
        go(q.range(e), len + 1);
    }
  };
  go(q.vertex_index(v), 0);
  return count;
}

bool cycles_meet_oracle(const Quiver& q, const VertexSet& keep) {
  return cycle_outside(q, q.mask_of(keep)).empty();
}

bool reaches_oracle(const Quiver& q, std::size_t from, const std::vector<char>& target) {
  std::vector<char> seen(q.vertex_count(), 0);
  std::vector<std::size_t> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    if (target[v]) return true;
    for (std::size_t e : q.out_edges(v))
      if (!seen[q.range(e)]) {
        seen[q.range(e)] = 1;
        stack.push_back(q.range(e));
      }
  }
  return false;
}

bool hereditary_oracle(const Quiver& q, const VertexSet& h) {
  for (const auto& e : q.edges())
    if (h.count(e.src) && !h.count(e.dst)) return false;
  return true;
}

bool saturated_oracle(const Quiver& q, const VertexSet& h) {
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (q.out_edges(v).empty() || h.count(q.vertex(v))) continue;
    bool all_in = true;
    for (std::size_t e : q.out_edges(v)) all_in = all_in && h.count(q.vertex(q.range(e)));
    if (all_in) return false;
  }
  return true;
}

VertexSet closure_oracle(const Quiver& q, const VertexSet& x) {
  VertexSet best = q.vertex_set();
  for (const auto& s : all_subsets(q)) {
    if (!std::includes(s.begin(), s.end(), x.begin(), x.end())) continue;
    if (!hereditary_oracle(q, s) || !saturated_oracle(q, s)) continue;
    VertexSet meet;
    std::set_intersection(best.begin(), best.end(), s.begin(), s.end(),
                          std::inserter(meet, meet.end()));
    best = std::move(meet);
  }
  return best;
}

std::size_t path_count_oracle(const Quiver& q, std::size_t n) {
  std::vector<std::size_t> ending(q.vertex_count(), 1);
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::size_t> next(q.vertex_count(), 0);
    for (std::size_t e = 0; e < q.edge_count(); ++e) next[q.range(e)] += ending[q.source(e)];
    ending = std::move(next);
  }
  return std::accumulate(ending.begin(), ending.end(), std::size_t{0});
}

Partition random_partition(const Quiver& q, std::mt19937_64& rng, Fiber fiber) {
  Partition p;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto& fib = fiber == Fiber::Source ? q.out_edges(v) : q.in_edges(v);
    if (fib.empty()) continue;
    std::vector<std::string> ids;
    for (std::size_t e : fib) ids.push_back(q.edge(e).id);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<std::vector<std::string>> blocks(1);
    for (const auto& id : ids) {
      if (!blocks.back().empty() && rng() % 2) blocks.emplace_back();
      blocks.back().push_back(id);
    }
    p.blocks[q.vertex(v)] = blocks;
  }
  return p;
}

}  // namespace qlpa::testing
