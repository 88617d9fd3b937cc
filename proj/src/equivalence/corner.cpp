#include "qlpa/equivalence.hpp"

#include "qlpa/error.hpp"

namespace qlpa {
namespace {

Path slice(const Path& p, const Quiver& q, std::size_t from, std::size_t to) {
  std::size_t start = from == 0 ? p.start : q.range(p.edges[from - 1]);
  return Path{start, std::vector<std::size_t>(p.edges.begin() + static_cast<std::ptrdiff_t>(from),
                                              p.edges.begin() + static_cast<std::ptrdiff_t>(to))};
}

std::string origin_edge(const Quiver& q, const CollapseResult& c, const Path& piece) {
  std::string id = collapse_edge_id(q, piece);
  if (!c.edge_origin.count(id))
    throw InternalError("path " + q.path_to_string(piece) + " should be an edge of Q'");
  return id;
}

// Cuts a path between kept vertices at every return to keep.
std::vector<std::string> t_letters(const Quiver& q, const CollapseResult& c,
                                   const std::vector<char>& kept, const Path& p) {
  std::vector<std::string> ids;
  std::size_t from = 0;
  for (std::size_t i = 0; i < p.edges.size(); ++i)
    if (kept[q.range(p.edges[i])]) {
      ids.push_back(origin_edge(q, c, slice(p, q, from, i + 1)));
      from = i + 1;
    }
  return ids;
}

// Index j such that p = p[0, j) p[j, len) with s(p_j) kept and every later
// range outside keep.
std::size_t last_exit(const Quiver& q, const std::vector<char>& kept, const Path& p) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.edges.size(); ++i)
    if (kept[q.source(p.edges[i])]) j = i;
  return j;
}

CornerWord word(const std::vector<std::string>& front, const std::vector<std::string>& back) {
  CornerWord w;
  for (const auto& id : front) w.push_back({CornerLetter::Kind::T, id});
  for (auto it = back.rbegin(); it != back.rend(); ++it)
    w.push_back({CornerLetter::Kind::TStar, *it});
  return w;
}

}  // namespace

CornerExpansion express_in_corner(const Quiver& q, const CollapseResult& c, const Monomial& m) {
  if (!q.is_valid_path(m.p) || !q.is_valid_path(m.q) || q.path_range(m.p) != q.path_range(m.q))
    throw PreconditionError("not a monomial of this quiver");
  auto kept = q.mask_of(c.q_prime.vertex_set());
  if (!kept[m.p.start] || !kept[m.q.start])
    throw PreconditionError("monomial " + q.path_to_string(m.p) + " (" + q.path_to_string(m.q) +
                            ")* does not start and end in the kept set");

  CornerExpansion out;
  std::size_t end = q.path_range(m.p);
  if (kept[end]) {
    CornerWord w = word(t_letters(q, c, kept, m.p), t_letters(q, c, kept, m.q));
    if (w.empty()) w.push_back({CornerLetter::Kind::Q, q.vertex(end)});
    out.terms.push_back({std::move(w), 1});
    return out;
  }

  std::size_t jp = last_exit(q, kept, m.p), jq = last_exit(q, kept, m.q);
  Path alpha = slice(m.p, q, 0, jp), beta = slice(m.p, q, jp, m.p.length());
  Path gamma = slice(m.q, q, 0, jq), delta = slice(m.q, q, jq, m.q.length());
  auto front = t_letters(q, c, kept, alpha);
  auto back = t_letters(q, c, kept, gamma);
  for (const Path& eta : bridge_paths_from(q, c.q_prime.vertex_set(), q.vertex(end))) {
    auto f = front;
    f.push_back(origin_edge(q, c, concat(beta, eta)));
    auto b = back;
    b.push_back(origin_edge(q, c, concat(delta, eta)));
    out.terms.push_back({word(f, b), 1});
  }
  if (out.terms.empty())
    throw InternalError("no bridge paths leave '" + q.vertex(end) + "'");
  return out;
}

Element substitute(const CornerExpansion& x, std::shared_ptr<const Quiver> q, Field f,
                   const CollapseResult& c) {
  Element out(q, f);
  for (const auto& [w, coeff] : x.terms) {
    Element prod = Element::one(q, f);
    for (const auto& letter : w) {
      Element factor(q, f);
      switch (letter.kind) {
        case CornerLetter::Kind::T:
          factor = Element::path(q, f, c.edge_origin.at(letter.id));
          break;
        case CornerLetter::Kind::TStar:
          factor = star(Element::path(q, f, c.edge_origin.at(letter.id)));
          break;
        case CornerLetter::Kind::Q:
          factor = Element::vertex(q, f, letter.id);
          break;
      }
      prod = prod * factor;
    }
    out = out + prod.scaled(coeff);
  }
  return out;
}

std::string to_string(const CornerExpansion& x) {
  if (x.terms.empty()) return "0";
  std::string out;
  for (const auto& [w, coeff] : x.terms) {
    if (!out.empty()) out += coeff < 0 ? " - " : " + ";
    else if (coeff < 0) out += "-";
    if (abs(coeff) != 1) out += scalar_to_string(abs(coeff)) + " ";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      switch (w[i].kind) {
        case CornerLetter::Kind::T: out += "T[" + w[i].id + "]"; break;
        case CornerLetter::Kind::TStar: out += "T*[" + w[i].id + "]"; break;
        case CornerLetter::Kind::Q: out += "q[" + w[i].id + "]"; break;
      }
    }
  }
  return out;
}

}  // namespace qlpa
