#include "qlpa/element.hpp"

#include <vector>

#include "qlpa/error.hpp"

namespace qlpa {

Monomial make_monomial(const Quiver& quiver, Path p, Path q) {
  if (!quiver.is_valid_path(p) || !quiver.is_valid_path(q))
    throw PreconditionError("monomial built from an invalid path");
  if (quiver.path_range(p) != quiver.path_range(q))
    throw PreconditionError("monomial " + quiver.path_to_string(p) + " (" +
                            quiver.path_to_string(q) + ")* has r(p) != r(q)");
  return {std::move(p), std::move(q)};
}

Element::Element(std::shared_ptr<const Quiver> quiver, Field field)
    : quiver_(std::move(quiver)), field_(field) {
  if (!quiver_) throw PreconditionError("element needs a quiver");
}

Element Element::vertex(std::shared_ptr<const Quiver> q, Field f, const std::string& v) {
  Path t = q->trivial_path(q->vertex_index(v));
  return monomial(std::move(q), f, {t, t});
}

Element Element::edge(std::shared_ptr<const Quiver> q, Field f, const std::string& e) {
  std::size_t ei = q->edge_index(e);
  Monomial m{q->edge_path(ei), q->trivial_path(q->range(ei))};
  return monomial(std::move(q), f, m);
}

Element Element::ghost(std::shared_ptr<const Quiver> q, Field f, const std::string& e) {
  std::size_t ei = q->edge_index(e);
  Monomial m{q->trivial_path(q->range(ei)), q->edge_path(ei)};
  return monomial(std::move(q), f, m);
}

Element Element::path(std::shared_ptr<const Quiver> q, Field f, const Path& p) {
  Monomial m = make_monomial(*q, p, q->trivial_path(q->path_range(p)));
  return monomial(std::move(q), f, m);
}

Element Element::monomial(std::shared_ptr<const Quiver> q, Field f, const Monomial& m,
                          const mpq_class& coeff) {
  Element out(std::move(q), f);
  out.add_term(make_monomial(*out.quiver_, m.p, m.q), coeff);
  return out;
}

Element Element::one(std::shared_ptr<const Quiver> q, Field f) {
  Element out(q, f);
  for (std::size_t v = 0; v < q->vertex_count(); ++v)
    out.add_term({q->trivial_path(v), q->trivial_path(v)}, 1);
  return out;
}

void Element::add_term(const Monomial& m, const mpq_class& c) {
  mpq_class reduced = field_.reduce(c);
  if (reduced == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, reduced);
  if (inserted) return;
  it->second = field_.reduce(it->second + reduced);
  if (it->second == 0) terms_.erase(it);
}

void require_compatible(const Element& a, const Element& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatch("elements over " + a.field().to_string() + " and " +
                        b.field().to_string());
  if (a.quiver_ptr() != b.quiver_ptr() && !(a.quiver() == b.quiver()))
    throw FieldMismatch("elements of Leavitt path algebras over different quivers");
}

Element Element::operator+(const Element& o) const {
  require_compatible(*this, o);
  Element out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const { return scaled(-1); }

Element Element::scaled(const mpq_class& c) const {
  Element out(quiver_, field_);
  for (const auto& [m, x] : terms_) out.add_term(m, x * c);
  return out;
}

std::optional<Monomial> multiply(const Quiver& q, const Monomial& a, const Monomial& b) {
  // (p q*)(u v*): q* u collapses to w when u = q w, to w* when q = u w.
  const Path& ghost = a.q;
  const Path& real = b.p;
  if (is_prefix(ghost, real)) {
    Path w{q.path_range(ghost),
           std::vector<std::size_t>(real.edges.begin() + ghost.length(), real.edges.end())};
    return Monomial{concat(a.p, w), b.q};
  }
  if (is_prefix(real, ghost)) {
    Path w{q.path_range(real),
           std::vector<std::size_t>(ghost.edges.begin() + real.length(), ghost.edges.end())};
    return Monomial{a.p, concat(b.q, w)};
  }
  return std::nullopt;
}

Element multiply(const Element& a, const Element& b) {
  require_compatible(a, b);
  Element out(a.quiver_ptr(), a.field());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto m = multiply(a.quiver(), ma, mb)) out.add_term(*m, ca * cb);
  return out;
}

Element star(const Element& a) {
  Element out(a.quiver_ptr(), a.field());
  for (const auto& [m, c] : a.terms()) out.add_term({m.q, m.p}, c);
  return out;
}

namespace {

// Distinguished edge of vertex v: the last element of s^{-1}(v) in id order.
bool is_distinguished(const Quiver& q, std::size_t e) {
  return q.out_edges(q.source(e)).back() == e;
}

Path drop_last(const Path& p) {
  return Path{p.start, std::vector<std::size_t>(p.edges.begin(), p.edges.end() - 1)};
}

Path append(const Path& p, std::size_t e) {
  Path out = p;
  out.edges.push_back(e);
  return out;
}

// One CK2 step on a reducible monomial: returns the shorter monomial (with
// coefficient +1) and the same-length replacements (coefficient -1).
std::pair<Monomial, std::vector<Monomial>> rewrite(const Quiver& q, const Monomial& m) {
  std::size_t hat = m.p.edges.back();
  Monomial shorter{drop_last(m.p), drop_last(m.q)};
  std::vector<Monomial> others;
  for (std::size_t e : q.out_edges(q.source(hat)))
    if (e != hat) others.push_back({append(shorter.p, e), append(shorter.q, e)});
  return {std::move(shorter), std::move(others)};
}

}  // namespace

bool is_reducible(const Quiver& q, const Monomial& m) {
  return !m.p.trivial() && !m.q.trivial() && m.p.edges.back() == m.q.edges.back() &&
         is_distinguished(q, m.p.edges.back());
}

Element normal_form(const Element& a) {
  const Quiver& q = a.quiver();
  Element out(a.quiver_ptr(), a.field());
  std::vector<std::pair<Monomial, mpq_class>> pending(a.terms().begin(), a.terms().end());
  while (!pending.empty()) {
    auto [m, c] = std::move(pending.back());
    pending.pop_back();
    if (!is_reducible(q, m)) {
      out.add_term(m, c);
      continue;
    }
    auto [shorter, others] = rewrite(q, m);
    for (auto& o : others) out.add_term(o, -c);
    pending.emplace_back(std::move(shorter), c);
  }
  return out;
}

Element normal_form_randomized(const Element& a, std::mt19937_64& rng) {
  const Quiver& q = a.quiver();
  Element cur = a;
  for (;;) {
    std::vector<Monomial> reducible;
    for (const auto& [m, c] : cur.terms())
      if (is_reducible(q, m)) reducible.push_back(m);
    if (reducible.empty()) return cur;
    std::uniform_int_distribution<std::size_t> pick(0, reducible.size() - 1);
    const Monomial m = reducible[pick(rng)];
    const mpq_class c = cur.terms().at(m);
    auto [shorter, others] = rewrite(q, m);
    cur.add_term(m, -c);
    cur.add_term(shorter, c);
    for (const auto& o : others) cur.add_term(o, -c);
  }
}

bool equal_in_algebra(const Element& a, const Element& b) {
  return normal_form(a - b).is_zero();
}

Element corner_idempotent(std::shared_ptr<const Quiver> q, Field f, const VertexSet& keep) {
  if (keep.empty()) throw PreconditionError("corner idempotent needs a nonempty vertex set");
  Element e(q, f);
  for (const auto& v : keep) e = e + Element::vertex(q, f, v);
  return e;
}

namespace {

nlohmann::ordered_json path_json(const Quiver& q, const Path& p) {
  if (p.trivial()) return {{"vertex", q.vertex(p.start)}};
  return q.path_ids(p);
}

Path path_from_json(const Quiver& q, const nlohmann::json& j) {
  if (j.is_object()) {
    if (!j.contains("vertex") || !j.at("vertex").is_string())
      throw PreconditionError("trivial path must be {\"vertex\": id}");
    return q.trivial_path(q.vertex_index(j.at("vertex").get<std::string>()));
  }
  if (!j.is_array() || j.empty())
    throw PreconditionError("path must be a nonempty array of edge ids or {\"vertex\": id}");
  return q.make_path(j.get<std::vector<std::string>>());
}

}  // namespace

nlohmann::ordered_json element_to_json(const Element& a) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [m, c] : a.terms()) {
    nlohmann::ordered_json t;
    t["p"] = path_json(a.quiver(), m.p);
    t["q"] = path_json(a.quiver(), m.q);
    t["coeff"] = scalar_to_string(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

Element element_from_json(std::shared_ptr<const Quiver> q, Field f, const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("element must be an array of terms");
  Element out(q, f);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("p") || !t.contains("q") || !t.contains("coeff") ||
        !t.at("coeff").is_string())
      throw PreconditionError("term must have p, q and a string coeff");
    Monomial m = make_monomial(*q, path_from_json(*q, t.at("p")), path_from_json(*q, t.at("q")));
    out.add_term(m, scalar_from_string(t.at("coeff").get<std::string>()));
  }
  return out;
}

}  // namespace qlpa
