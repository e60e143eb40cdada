#pragma once

// Integer lattices in Z^k, their finite quotients, Smith/Hermite normal forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gda {

using Integer = mpz_class;
using IntMatrix = std::vector<std::vector<Integer>>;

/// A degree in the ambient grade group Z^k.
using GradeVector = std::vector<std::int64_t>;

GradeVector operator+(const GradeVector& a, const GradeVector& b);
GradeVector operator-(const GradeVector& a, const GradeVector& b);
GradeVector operator-(const GradeVector& a);
GradeVector scale(std::int64_t m, const GradeVector& v);
bool is_zero(const GradeVector& v);
std::string to_string(const GradeVector& v);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
/// Exact determinant (fraction-free elimination); square input only.
Integer determinant(IntMatrix m);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal with d_1 | d_2 | ...
  IntMatrix V;  // cols x cols, unimodular
};

/// U * m * V = D with nonnegative diagonal forming a divisibility chain.
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form with zero rows removed: pivots strictly
/// increase to the right, are positive, and dominate the entries above them.
IntMatrix hermite_normal_form(IntMatrix rows);

class Lattice {
 public:
  Lattice(std::size_t ambient_rank, const std::vector<GradeVector>& generators);
  Lattice(std::size_t ambient_rank, IntMatrix generators);

  static Lattice whole(std::size_t ambient_rank);
  static Lattice zero(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.size(); }
  /// Hermite-reduced basis rows.
  const IntMatrix& basis() const { return basis_; }

  bool contains(const GradeVector& v) const;
  bool contains(const Lattice& other) const;

  /// Canonical representative of v + L.
  GradeVector reduce(const GradeVector& v) const;

  /// Coordinates of v in basis(), if v lies in the rational span.
  std::optional<std::vector<mpq_class>> rational_coordinates(const GradeVector& v) const;
  /// Integer coordinates of v in basis(), if v is a member.
  std::optional<std::vector<Integer>> coordinates(const GradeVector& v) const;

  /// The lattice generated by both.
  Lattice operator+(const Lattice& other) const;
  bool operator==(const Lattice& other) const = default;

  std::vector<GradeVector> basis_vectors() const;

 private:
  std::size_t ambient_rank_;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  /// Normalizes an arbitrary direct sum of cyclic groups Z/m_i (m_i >= 1).
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<Integer>& orders);

  /// d_1 | d_2 | ... | d_r, each >= 2.
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  Integer order() const;
  Integer exponent() const;
  bool is_trivial() const { return factors_.empty(); }
  std::string to_string() const;

  bool operator==(const FiniteAbelianGroup& other) const = default;

 private:
  std::vector<Integer> factors_;
};

struct QuotientGroup {
  FiniteAbelianGroup torsion;
  std::size_t free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
};

/// sup / sub; raises NotASubgroup when sub is not contained in sup.
QuotientGroup quotient(const Lattice& sup, const Lattice& sub);

/// Q ^ Q for a finite abelian group Q: the sum over i < j of Z/d_i.
FiniteAbelianGroup exterior_square(const FiniteAbelianGroup& q);

/// Least m >= 1 with m v in L; nullopt when the coset has infinite order.
std::optional<Integer> coset_order(const GradeVector& v, const Lattice& lattice);

std::int64_t to_int64(const Integer& z);

}  // namespace gda
