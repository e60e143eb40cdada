#pragma once

// Graded division algebras realized as twisted group algebras T_0^sigma[Gamma_E]
// with one-dimensional homogeneous components and central coefficients.

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gda/grading.hpp"
#include "gda/scalars.hpp"

namespace gda {

struct HomogeneousUnit {
  FieldElement coeff;
  GradeVector degree;

  bool operator==(const HomogeneousUnit&) const = default;
};

/// Class of a homogeneous unit modulo [E^*, E^*] = mu_e(T_0).
struct AbelianizedUnit {
  GradeVector degree;
  FieldElement coeff_class;

  bool operator==(const AbelianizedUnit&) const = default;
};

/// Finite T_0-combination of basis monomials e_gamma; no zero coefficients.
class AlgebraElement {
 public:
  using Terms = std::map<GradeVector, FieldElement>;

  AlgebraElement() = default;
  explicit AlgebraElement(const HomogeneousUnit& u);
  static AlgebraElement from_terms(const Terms& terms);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// The single term when the element is homogeneous and nonzero.
  std::optional<HomogeneousUnit> as_homogeneous() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(const FieldElement& c) const;

  bool operator==(const AlgebraElement&) const = default;

 private:
  void add_term(const GradeVector& degree, const FieldElement& c);
  Terms terms_;
};

struct AlgebraSpec {
  CoefficientField field;
  std::size_t ambient_rank;
  std::vector<GradeVector> gamma_e_basis;
  std::vector<std::vector<FieldElement>> commutation;
};

class GradedDivisionAlgebra {
 public:
  /// Validates the pairing and derives Gamma_T, s and e. Raises
  /// NotRootOfUnity, InfiniteIndexRadical, NonSquareIndex, ValidationError.
  static GradedDivisionAlgebra make(const AlgebraSpec& spec);

  const CoefficientField& field() const { return spec_.field; }
  std::size_t ambient_rank() const { return spec_.ambient_rank; }
  /// g_1..g_r, the basis the commutation matrix refers to.
  const std::vector<GradeVector>& basis() const { return spec_.gamma_e_basis; }
  const std::vector<std::vector<FieldElement>>& commutation() const { return spec_.commutation; }
  const Lattice& gamma_e() const { return gamma_e_; }
  const Lattice& gamma_t() const { return gamma_t_; }
  /// Gamma_E / Gamma_T.
  const FiniteAbelianGroup& quotient_group() const { return quotient_; }
  /// Lambda = Gamma_E/Gamma_T wedge Gamma_E/Gamma_T.
  const FiniteAbelianGroup& lambda() const { return lambda_; }
  std::uint64_t index() const { return s_; }
  std::uint64_t exponent() const { return e_; }
  bool is_graded_field() const { return s_ == 1; }
  RootsOfUnity mu_e() const { return mu(field(), e_); }
  RootsOfUnity mu_s() const { return mu(field(), s_); }

  /// Integer coordinates in basis(); raises DegreeOutsideGammaE.
  std::vector<std::int64_t> coordinates(const GradeVector& gamma) const;
  GradeVector from_coordinates(const std::vector<std::int64_t>& x) const;

  /// e_gamma e_delta = sigma(gamma, delta) e_{gamma+delta}.
  FieldElement sigma(const GradeVector& gamma, const GradeVector& delta) const;
  /// The commutation bicharacter beta(gamma, delta) = [e_gamma, e_delta].
  FieldElement beta(const GradeVector& gamma, const GradeVector& delta) const;

  HomogeneousUnit one() const;
  HomogeneousUnit monomial(const GradeVector& gamma) const;
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
  HomogeneousUnit multiply(const HomogeneousUnit& u, const HomogeneousUnit& v) const;
  /// Raises ZeroCoefficient.
  HomogeneousUnit invert_homogeneous(const HomogeneousUnit& u) const;
  /// u v u^{-1} v^{-1}, a scalar in T_0^*.
  FieldElement commutator(const HomogeneousUnit& u, const HomogeneousUnit& v) const;
  /// [x_gamma, x_delta] for the class (gamma + Gamma_T) ^ (delta + Gamma_T).
  FieldElement psi(const GradeVector& gamma, const GradeVector& delta) const;

  /// Canonical representative of c * mu_e(T_0).
  FieldElement canonical_class(const FieldElement& c) const;
  AbelianizedUnit abelianize(const HomogeneousUnit& u) const;
  AbelianizedUnit combine(const AbelianizedUnit& a, const AbelianizedUnit& b) const;
  AbelianizedUnit identity_class() const;

 private:
  explicit GradedDivisionAlgebra(AlgebraSpec spec) : spec_(std::move(spec)) {}
  FieldElement zeta_power(std::int64_t k) const;
  void build_left_inverse();

  AlgebraSpec spec_;
  Lattice gamma_e_{0, IntMatrix{}};
  Lattice gamma_t_{0, IntMatrix{}};
  FiniteAbelianGroup quotient_;
  FiniteAbelianGroup lambda_;
  std::uint64_t s_ = 1;
  std::uint64_t e_ = 1;

  // c_ij = zeta^{a_ij}, zeta of order m_.
  std::uint64_t m_ = 1;
  std::vector<std::vector<std::int64_t>> log_commutation_;
  std::shared_ptr<const std::vector<FieldElement>> zeta_powers_;

  // Left inverse of the basis on pivot columns, scaled by inverse_den_.
  std::vector<std::size_t> pivot_columns_;
  std::vector<std::vector<std::int64_t>> inverse_;
  std::int64_t inverse_den_ = 1;

  // Discrete logs in GF(p)^* for coefficient classes.
  std::shared_ptr<const std::vector<std::uint32_t>> log_table_;
  std::vector<FieldElement> mu_e_elements_;
};

}  // namespace gda
