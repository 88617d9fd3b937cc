#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qlpa {

/// Coefficient field: exact rationals, or integers mod a prime. Prime-field
/// scalars are stored as their canonical representative in [0, p).
struct Field {
  std::optional<std::uint32_t> prime;

  static Field rationals() { return {}; }
  /// Throws PreconditionError unless p is a prime below 2^31.
  static Field modulo(std::uint64_t p);

  bool is_rational() const { return !prime.has_value(); }
  /// Canonical form of x in this field. Throws PreconditionError when the
  /// denominator is divisible by the characteristic.
  mpq_class reduce(const mpq_class& x) const;

  /// "q" or "fp:<p>".
  std::string to_string() const;
  bool operator==(const Field&) const = default;
};

/// Accepts "q" and "fp:<prime>".
Field parse_field(std::string_view text);

/// "n" or "n/d" in lowest terms.
std::string scalar_to_string(const mpq_class& x);
/// Inverse of scalar_to_string; throws ParseError.
mpq_class scalar_from_string(std::string_view text);

}  // namespace qlpa
