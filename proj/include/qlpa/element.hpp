#pragma once

#include <map>
#include <optional>
#include <memory>
#include <random>
#include <string>

#include "json.hpp"
#include "qlpa/quiver.hpp"
#include "qlpa/scalar.hpp"

namespace qlpa {

/// p q* with r(p) = r(q). The vertex idempotent v is (v, v).
struct Monomial {
  Path p, q;
  auto operator<=>(const Monomial&) const = default;
};

/// Throws PreconditionError when r(p) != r(q) or either path is invalid.
Monomial make_monomial(const Quiver& quiver, Path p, Path q);

/// Finite linear combination of monomials in L_k(Q). Zero coefficients are
/// never stored. Products are CK1-reduced by construction but not reduced
/// modulo CK2; use normal_form for canonical representatives.
class Element {
 public:
  using Terms = std::map<Monomial, mpq_class>;

  Element(std::shared_ptr<const Quiver> quiver, Field field);

  static Element vertex(std::shared_ptr<const Quiver> q, Field f, const std::string& v);
  static Element edge(std::shared_ptr<const Quiver> q, Field f, const std::string& e);
  static Element ghost(std::shared_ptr<const Quiver> q, Field f, const std::string& e);
  static Element path(std::shared_ptr<const Quiver> q, Field f, const Path& p);
  static Element monomial(std::shared_ptr<const Quiver> q, Field f, const Monomial& m,
                          const mpq_class& coeff = 1);
  /// Sum of all vertices, the unit of L_k(Q).
  static Element one(std::shared_ptr<const Quiver> q, Field f);

  const Quiver& quiver() const { return *quiver_; }
  const std::shared_ptr<const Quiver>& quiver_ptr() const { return quiver_; }
  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * m, dropping the term if it cancels.
  void add_term(const Monomial& m, const mpq_class& c);

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element scaled(const mpq_class& c) const;

  /// Same stored terms. Equality in the algebra is equal_in_algebra().
  bool identical(const Element& o) const { return terms_ == o.terms_; }

 private:
  std::shared_ptr<const Quiver> quiver_;
  Field field_;
  Terms terms_;
};

/// Throws FieldMismatch when a and b differ in field or quiver.
void require_compatible(const Element& a, const Element& b);

/// The CK1 product of two monomials, or nullopt when it vanishes.
std::optional<Monomial> multiply(const Quiver& q, const Monomial& a, const Monomial& b);
Element multiply(const Element& a, const Element& b);
inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element star(const Element& a);

/// CK2 rewriting with the lexicographically last edge of each s^{-1}(v) as the
/// distinguished edge: (p'e, q'e) -> (p', q') - sum over other f in s^{-1}(v)
/// of (p'f, q'f). The irreducible monomials form a basis.
Element normal_form(const Element& a);
/// Same reduction, but each step rewrites a reducible monomial chosen at
/// random from the current (partially reduced) element.
Element normal_form_randomized(const Element& a, std::mt19937_64& rng);
bool is_reducible(const Quiver& q, const Monomial& m);

bool equal_in_algebra(const Element& a, const Element& b);

/// Sum of the vertex idempotents in `keep`. Throws PreconditionError if empty.
Element corner_idempotent(std::shared_ptr<const Quiver> q, Field f, const VertexSet& keep);

/// [{"p": [...], "q": [...], "coeff": "3/2"}]; trivial paths are {"vertex": v}.
nlohmann::ordered_json element_to_json(const Element& a);
Element element_from_json(std::shared_ptr<const Quiver> q, Field f, const nlohmann::json& j);

}  // namespace qlpa
