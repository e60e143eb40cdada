#pragma once

// Shifted matrix algebras S = M_n(E)(delta): the (i,j) entry of a degree
// lambda matrix lies in E_{lambda + delta_j - delta_i}.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gda/algebra.hpp"
#include "gda/permutation.hpp"

namespace gda {

using FieldMatrix = std::vector<std::vector<FieldElement>>;

/// Determinant over the commutative coefficient field; Gaussian elimination.
FieldElement field_determinant(FieldMatrix m);

class GradedMatrix {
 public:
  GradedMatrix() = default;
  explicit GradedMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const { return n_; }
  const AlgebraElement& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  AlgebraElement& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  bool is_zero() const;

  bool operator==(const GradedMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<AlgebraElement> entries_;
};

/// U * P_perm: row i carries diag[i] in column perm^{-1}(i).
struct MonomialMatrix {
  std::vector<HomogeneousUnit> diag;
  Permutation perm;
};

struct Homogeneity {
  enum class Kind { Homogeneous, NotHomogeneous, Zero };
  Kind kind = Kind::Zero;
  GradeVector degree;

  bool homogeneous() const { return kind == Kind::Homogeneous; }
};

/// The isomorphism S -> S' onto the epsilon-form: the shift of index i is
/// replaced by eps_{class(i)} = delta_i + alpha_i and indices are sorted by class.
struct EpsilonForm {
  std::vector<GradeVector> classes;        // eps_1..eps_l, first representative of each coset
  std::vector<std::size_t> multiplicities;  // r_1..r_l
  std::vector<std::size_t> class_of;        // original index -> class
  std::vector<GradeVector> translations;    // alpha_i in Gamma_E
  Permutation perm;                         // original index -> new position
  std::vector<GradeVector> shifts;          // epsilon-form shift vector
  std::vector<std::size_t> block_start;     // first new position of each class
};

struct GammaSStar {
  Lattice lattice;
  /// One (sigma, lambda) per coset: lambda = delta_i - delta_sigma(i) mod Gamma_E for all i.
  std::vector<std::pair<Permutation, GradeVector>> witnesses;
};

class ShiftedMatrixAlgebra {
 public:
  /// Raises ValidationError unless 1 <= n <= 8 and the shifts fit.
  ShiftedMatrixAlgebra(std::shared_ptr<const GradedDivisionAlgebra> algebra, std::size_t n,
                       std::vector<GradeVector> shifts);
  static ShiftedMatrixAlgebra unshifted(std::shared_ptr<const GradedDivisionAlgebra> algebra, std::size_t n);

  const GradedDivisionAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const GradedDivisionAlgebra> algebra_ptr() const { return algebra_; }
  std::size_t n() const { return n_; }
  const std::vector<GradeVector>& shifts() const { return shifts_; }
  const EpsilonForm& epsilon_form() const { return eps_; }
  bool is_epsilon_form() const;
  /// M_n(E_0) = M_2(F_2); formula operations refuse it.
  bool exceptional_f2() const { return exceptional_f2_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Degree of the (i,j) entry in a degree-lambda matrix.
  GradeVector entry_degree(const GradeVector& lambda, std::size_t i, std::size_t j) const;
  Homogeneity homogeneity(const GradedMatrix& a) const;
  /// Raises NotHomogeneous, or Singular for the zero matrix.
  GradeVector degree(const GradedMatrix& a) const;

  /// Canonical coset representatives of delta_j - delta_i.
  std::vector<GradeVector> grade_set() const;
  GammaSStar gamma_s_star() const;

  /// The isomorphic algebra with epsilon-form shifts, and transport both ways.
  ShiftedMatrixAlgebra epsilon_algebra() const;
  GradedMatrix to_epsilon(const GradedMatrix& a) const;
  GradedMatrix from_epsilon(const GradedMatrix& a) const;

  /// Diagonal blocks of A in S_0 under S_0 = prod M_{r_l}(E_0). Raises NotDegreeZero.
  std::vector<FieldMatrix> block_decompose(const GradedMatrix& a) const;
  /// Inverse of block_decompose.
  GradedMatrix block_assemble(const std::vector<FieldMatrix>& blocks) const;

  GradedMatrix zero() const { return GradedMatrix(n_); }
  GradedMatrix identity() const;
  /// e_ij(x) = I + x E_ij; raises SamePosition or WrongDegree.
  GradedMatrix elementary(std::size_t i, std::size_t j, const AlgebraElement& x) const;
  GradedMatrix diagonal(const std::vector<HomogeneousUnit>& units) const;
  GradedMatrix scalar(const HomogeneousUnit& u) const;
  GradedMatrix permutation_matrix(const Permutation& p) const;
  GradedMatrix monomial(const MonomialMatrix& m) const;

  GradedMatrix multiply(const GradedMatrix& a, const GradedMatrix& b) const;
  GradedMatrix add(const GradedMatrix& a, const GradedMatrix& b) const;
  /// Inverse of a homogeneous invertible matrix via its Bruhat form; raises Singular.
  GradedMatrix invert(const GradedMatrix& a) const;

 private:
  bool trivial_translation(std::size_t i) const {
    return std::all_of(eps_.translations[i].begin(), eps_.translations[i].end(), [](auto x) { return x == 0; });
  }

  std::shared_ptr<const GradedDivisionAlgebra> algebra_;
  std::size_t n_;
  std::vector<GradeVector> shifts_;
  EpsilonForm eps_;
  bool exceptional_f2_ = false;
  std::vector<std::string> warnings_;
};

}  // namespace gda
