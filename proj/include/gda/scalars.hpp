#pragma once

// Exact coefficient fields: GF(p) and Q(zeta_N) = Q[z]/Phi_N(z).

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gda {

class FieldElement;

class CoefficientField {
 public:
  enum class Kind { Prime, Cyclotomic };

  static constexpr std::uint64_t kMaxPrime = 1000000;
  static constexpr std::uint32_t kMaxConductor = 120;

  /// Raises ValidationError unless p is a prime <= kMaxPrime.
  static CoefficientField prime(std::uint64_t p);
  /// Raises ValidationError unless 1 <= n <= kMaxConductor.
  static CoefficientField cyclotomic(std::uint32_t n);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Prime; }
  /// p for GF(p), N for Q(zeta_N).
  std::uint64_t modulus() const { return modulus_; }
  /// Vector-space dimension over the prime field (1 or phi(N)).
  std::size_t degree() const;
  /// |T_0^*| when finite.
  std::optional<std::uint64_t> unit_group_order() const;
  /// Order of the (cyclic) group of all roots of unity in the field.
  std::uint64_t roots_of_unity_order() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_integer(long value) const;
  FieldElement from_rational(const mpq_class& value) const;
  /// The class of z in Q(zeta_N); raises ValidationError for prime fields.
  FieldElement zeta() const;
  /// Generator of GF(p)^*; raises InfiniteCoefficientField for cyclotomic fields.
  FieldElement primitive_root() const;

  std::string describe() const;

  bool operator==(const CoefficientField&) const = default;

 private:
  CoefficientField(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}
  Kind kind_;
  std::uint64_t modulus_;
};

/// Phi_N as integer coefficients, constant term first. Cached, thread-safe.
const std::vector<mpz_class>& cyclotomic_polynomial(std::uint32_t n);

class FieldElement {
 public:
  const CoefficientField& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  /// Raises ZeroElement on zero.
  FieldElement inverse() const;
  /// Negative exponents invert.
  FieldElement pow(std::int64_t e) const;

  bool operator==(const FieldElement& o) const;
  /// A fixed total order on canonical representations.
  std::strong_ordering operator<=>(const FieldElement& o) const;

  /// Canonical literal: residue in [0, p) or a polynomial in z.
  std::string to_string() const;

  std::uint64_t residue() const { return residue_; }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }

 private:
  friend class CoefficientField;
  friend FieldElement make_cyclotomic_element(const CoefficientField&, std::vector<mpq_class>);
  explicit FieldElement(CoefficientField f) : field_(f) {}

  CoefficientField field_;
  std::uint64_t residue_ = 0;
  std::vector<mpq_class> coeffs_;  // exactly degree() entries, constant term first
};

/// Reduces an arbitrary polynomial in z (constant term first) into Q(zeta_N).
FieldElement make_cyclotomic_element(const CoefficientField& f, std::vector<mpq_class> poly);

/// Total parser for the literal syntax; raises ParseError with the offending
/// position. Prime fields: optionally signed integers. Cyclotomic fields:
/// sums of terms like `-3/4*z^2`, `z`, `5`.
FieldElement parse_field_element(const CoefficientField& f, std::string_view text);

struct RootsOfUnity {
  std::uint64_t order = 1;
  FieldElement generator;

  std::vector<FieldElement> elements() const;
  bool contains(const FieldElement& x) const;
};

/// mu_d(F), the d-th roots of unity lying in F.
RootsOfUnity mu(const CoefficientField& f, std::uint64_t d);

/// Multiplicative order of x, nullopt when infinite. Raises ZeroElement on 0.
std::optional<std::uint64_t> order_of_unit(const FieldElement& x);

/// Discrete log of x to the base f.primitive_root() in GF(p)^*, by
/// baby-step giant-step.
std::uint64_t discrete_log(const FieldElement& x);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);
bool is_prime(std::uint64_t n);

}  // namespace gda
