#include "qlpa/scalar.hpp"

#include <cctype>
#include <charconv>

#include "qlpa/error.hpp"

namespace qlpa {
namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::modulo(std::uint64_t p) {
  if (p >= (1ULL << 31) || !is_prime(p))
    throw PreconditionError(std::to_string(p) + " is not a prime below 2^31");
  return Field{static_cast<std::uint32_t>(p)};
}

mpq_class Field::reduce(const mpq_class& x) const {
  if (!prime) return x;
  mpz_class p = static_cast<unsigned long>(*prime);
  mpz_class den = x.get_den() % p;
  if (den == 0)
    throw PreconditionError("denominator of " + scalar_to_string(x) + " vanishes mod " +
                            std::to_string(*prime));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (x.get_num() * inv) % p;
  if (r < 0) r += p;
  return mpq_class(r);
}

std::string Field::to_string() const {
  return prime ? "fp:" + std::to_string(*prime) : "q";
}

Field parse_field(std::string_view text) {
  if (text == "q") return Field::rationals();
  if (text.substr(0, 3) == "fp:") {
    auto digits = text.substr(3);
    std::uint64_t p = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty())
      return Field::modulo(p);
  }
  throw PreconditionError("unknown field '" + std::string(text) + "' (expected q or fp:<prime>)");
}

std::string scalar_to_string(const mpq_class& x) { return x.get_str(); }

mpq_class scalar_from_string(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) throw ParseError(i, "expected digits in scalar '" + std::string(text) + "'");
  if (i < text.size()) {
    if (text[i] != '/') throw ParseError(i, "unexpected character in scalar");
    std::size_t den_start = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) throw ParseError(i, "malformed denominator");
    if (text.substr(den_start).find_first_not_of('0') == std::string_view::npos)
      throw ParseError(den_start, "zero denominator");
  }
  mpq_class x(std::string(text[0] == '+' ? text.substr(1) : text));
  x.canonicalize();
  return x;
}

}  // namespace qlpa
