#include "qlpa/expr.hpp"

#include <algorithm>
#include <cctype>

#include "qlpa/error.hpp"

namespace qlpa {
namespace {

bool is_special(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '*' ||
         c == '(' || c == ')' || c == '/' || c == '"';
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LpaExpr parse() {
    LpaExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool factor_start() {
    char c = peek();
    return c == '(' || c == '"' || (c != '\0' && !is_special(c));
  }

  std::string_view bare_run() const {
    std::size_t end = pos_;
    while (end < text_.size() && !is_special(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  LpaExpr expr() {
    std::size_t start = (skip_space(), pos_);
    std::vector<LpaExpr> terms;
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    for (;;) {
      LpaExpr t = term();
      if (negate) t = LpaExpr{LpaExpr::Kind::Negate, {}, 0, {std::move(t)}, t.position};
      terms.push_back(std::move(t));
      char c = peek();
      if (c != '+' && c != '-') break;
      negate = c == '-';
      ++pos_;
    }
    if (terms.size() == 1) return std::move(terms.front());
    return LpaExpr{LpaExpr::Kind::Sum, {}, 0, std::move(terms), start};
  }

  LpaExpr term() {
    skip_space();
    std::size_t start = pos_;
    std::vector<LpaExpr> factors;
    if (peek() == '\0') fail("expected a term");
    std::string_view run = bare_run();
    if (all_digits(run)) {
      std::size_t after = pos_ + run.size();
      std::size_t save = pos_;
      pos_ = after;
      bool slash = peek() == '/';
      bool coefficient = slash || factor_start();
      pos_ = save;
      if (coefficient) {
        LpaExpr s = scalar();
        if (!factor_start()) return s;
        factors.push_back(std::move(s));
      }
    }
    if (!factor_start()) fail("expected an identifier, quoted identifier or '('");
    while (factor_start()) factors.push_back(factor());
    if (factors.size() == 1) return std::move(factors.front());
    return LpaExpr{LpaExpr::Kind::Product, {}, 0, std::move(factors), start};
  }

  LpaExpr scalar() {
    std::size_t start = pos_;
    std::string_view num = bare_run();
    pos_ += num.size();
    std::string literal(num);
    if (peek() == '/') {
      ++pos_;
      skip_space();
      std::string_view den = bare_run();
      if (!all_digits(den)) fail("expected a denominator");
      if (den.find_first_not_of('0') == std::string_view::npos) fail("zero denominator");
      pos_ += den.size();
      literal += "/" + std::string(den);
    }
    mpq_class v(literal);
    v.canonicalize();
    return LpaExpr{LpaExpr::Kind::Scalar, {}, v, {}, start};
  }

  LpaExpr factor() {
    LpaExpr a = atom();
    while (peek() == '*') {
      std::size_t at = pos_++;
      a = LpaExpr{LpaExpr::Kind::Star, {}, 0, {std::move(a)}, at};
    }
    return a;
  }

  LpaExpr atom() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      LpaExpr e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '"') {
      ++pos_;
      std::string name;
      for (;;) {
        if (pos_ >= text_.size()) {
          pos_ = start;
          fail("unterminated quoted identifier");
        }
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) fail("dangling escape");
          d = text_[pos_++];
        }
        name += d;
      }
      if (name.empty()) fail("empty quoted identifier");
      return LpaExpr{LpaExpr::Kind::Ident, name, 0, {}, start};
    }
    std::string_view run = bare_run();
    if (run.empty()) fail("expected an identifier");
    pos_ += run.size();
    return LpaExpr{LpaExpr::Kind::Ident, std::string(run), 0, {}, start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LpaExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

Element eval_expr(const LpaExpr& e, std::shared_ptr<const Quiver> q, Field f) {
  switch (e.kind) {
    case LpaExpr::Kind::Ident:
      if (q->find_edge(e.name)) return Element::edge(q, f, e.name);
      if (q->find_vertex(e.name)) return Element::vertex(q, f, e.name);
      if (all_digits(e.name)) return Element::one(q, f).scaled(mpq_class(e.name));
      throw UnknownId("'" + e.name + "' (at position " + std::to_string(e.position) +
                      ") is neither an edge nor a vertex");
    case LpaExpr::Kind::Scalar:
      return Element::one(q, f).scaled(e.value);
    case LpaExpr::Kind::Sum: {
      Element out(q, f);
      for (const auto& c : e.children) out = out + eval_expr(c, q, f);
      return out;
    }
    case LpaExpr::Kind::Product: {
      Element out = eval_expr(e.children.front(), q, f);
      for (std::size_t i = 1; i < e.children.size(); ++i)
        out = multiply(out, eval_expr(e.children[i], q, f));
      return out;
    }
    case LpaExpr::Kind::Star:
      return star(eval_expr(e.children.front(), q, f));
    case LpaExpr::Kind::Negate:
      return -eval_expr(e.children.front(), q, f);
  }
  throw InternalError("unhandled expression node");
}

Element eval_expr(std::string_view text, std::shared_ptr<const Quiver> q, Field f) {
  return eval_expr(parse_expr(text), std::move(q), f);
}

std::string render_identifier(std::string_view id) {
  bool bare = !id.empty() && !all_digits(id) &&
              std::none_of(id.begin(), id.end(), [](char c) { return is_special(c) || c == '\\'; });
  if (bare) return std::string(id);
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render(const Element& a) {
  const Quiver& q = a.quiver();
  if (a.is_zero()) return "0/1";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    bool negative = c < 0;
    mpq_class mag = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::vector<std::string> factors;
    for (std::size_t e : m.p.edges) factors.push_back(render_identifier(q.edge(e).id));
    for (auto it = m.q.edges.rbegin(); it != m.q.edges.rend(); ++it)
      factors.push_back(render_identifier(q.edge(*it).id) + "*");
    if (factors.empty()) factors.push_back(render_identifier(q.vertex(m.p.start)));
    if (mag != 1) out += scalar_to_string(mag) + " ";
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? " " : "") + factors[i];
  }
  return out;
}

}  // namespace qlpa
