#include "qlpa/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "qlpa/matrix.hpp"

namespace qlpa {
namespace {

using Profile = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

std::vector<Profile> profiles(const IntMatrix& m) {
  std::vector<Profile> out(m.rows());
  for (std::size_t v = 0; v < m.rows(); ++v) {
    std::int64_t outdeg = 0, indeg = 0;
    for (std::size_t w = 0; w < m.rows(); ++w) {
      outdeg += m(v, w);
      indeg += m(w, v);
    }
    out[v] = {outdeg, indeg, m(v, v)};
  }
  return out;
}

class Matcher {
 public:
  Matcher(const IntMatrix& a, const IntMatrix& b) : a_(a), b_(b), n_(a.rows()) {
    auto pa = profiles(a), pb = profiles(b);
    candidates_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v)
      for (std::size_t w = 0; w < n_; ++w)
        if (pa[v] == pb[w]) candidates_[v].push_back(w);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return candidates_[x].size() < candidates_[y].size();
    });
    map_.assign(n_, n_);
    used_.assign(n_, 0);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (search(0)) return map_;
    return std::nullopt;
  }

 private:
  bool consistent(std::size_t v, std::size_t w, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i) {
      std::size_t u = order_[i];
      std::size_t x = map_[u];
      if (a_(v, u) != b_(w, x) || a_(u, v) != b_(x, w)) return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == n_) return true;
    std::size_t v = order_[depth];
    for (std::size_t w : candidates_[v]) {
      if (used_[w] || !consistent(v, w, depth)) continue;
      map_[v] = w;
      used_[w] = 1;
      if (search(depth + 1)) return true;
      used_[w] = 0;
      map_[v] = n_;
    }
    return false;
  }

  const IntMatrix& a_;
  const IntMatrix& b_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> map_;
  std::vector<char> used_;
};

}  // namespace

IsoResult is_isomorphic(const Quiver& a, const Quiver& b, std::size_t max_vertices) {
  IsoResult result;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
    result.status = IsoStatus::NotIsomorphic;
    result.reason = "vertex or edge counts differ";
    return result;
  }
  IntMatrix ma = incidence(a), mb = incidence(b);
  auto pa = profiles(ma), pb = profiles(mb);
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) {
    result.status = IsoStatus::NotIsomorphic;
    result.reason = "degree profiles differ";
    return result;
  }
  if (a.vertex_count() > max_vertices) {
    result.status = IsoStatus::Undecided;
    result.reason = "undecided: " + std::to_string(a.vertex_count()) +
                    " vertices exceeds the bound of " + std::to_string(max_vertices);
    return result;
  }

  auto map = Matcher(ma, mb).run();
  if (!map) {
    result.status = IsoStatus::NotIsomorphic;
    result.reason = "no adjacency-preserving vertex bijection";
    return result;
  }

  IsoWitness w;
  for (std::size_t v = 0; v < a.vertex_count(); ++v)
    w.vertex_map.emplace(a.vertex(v), b.vertex((*map)[v]));
  // Parallel edges are paired in id order.
  for (std::size_t u = 0; u < a.vertex_count(); ++u) {
    std::map<std::size_t, std::vector<std::size_t>> a_by_target, b_by_target;
    for (std::size_t e : a.out_edges(u)) a_by_target[a.range(e)].push_back(e);
    for (std::size_t e : b.out_edges((*map)[u])) b_by_target[b.range(e)].push_back(e);
    for (const auto& [target, edges] : a_by_target) {
      const auto& images = b_by_target[(*map)[target]];
      for (std::size_t i = 0; i < edges.size(); ++i)
        w.edge_map.emplace(a.edge(edges[i]).id, b.edge(images[i]).id);
    }
  }
  result.status = IsoStatus::Isomorphic;
  result.witness = std::move(w);
  return result;
}

bool verify_isomorphism(const Quiver& a, const Quiver& b, const IsoWitness& w) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  if (w.vertex_map.size() != a.vertex_count() || w.edge_map.size() != a.edge_count())
    return false;
  std::set<std::string> vimg, eimg;
  for (const auto& [from, to] : w.vertex_map) {
    if (!a.find_vertex(from) || !b.find_vertex(to)) return false;
    vimg.insert(to);
  }
  if (vimg.size() != b.vertex_count()) return false;
  for (const auto& [from, to] : w.edge_map) {
    auto ea = a.find_edge(from);
    auto eb = b.find_edge(to);
    if (!ea || !eb) return false;
    const Edge& x = a.edge(*ea);
    const Edge& y = b.edge(*eb);
    if (w.vertex_map.at(x.src) != y.src || w.vertex_map.at(x.dst) != y.dst) return false;
    eimg.insert(to);
  }
  return eimg.size() == b.edge_count();
}

}  // namespace qlpa
