#pragma once

// Strict Bruhat normal form A = T U P_pi V of a homogeneous invertible matrix.

#include <vector>

#include "gda/gmatrix.hpp"

namespace gda {

/// The homogeneous elementary matrix e_ij(x) = I + x E_ij.
struct ElementaryFactor {
  std::size_t i;
  std::size_t j;
  HomogeneousUnit x;

  bool operator==(const ElementaryFactor&) const = default;
};

struct BruhatForm {
  GradedMatrix T;                            // unipotent lower triangular, degree 0
  std::vector<ElementaryFactor> certificate;  // T as a product, left to right
  std::vector<HomogeneousUnit> U;            // diagonal
  Permutation perm;                          // pi; rho = pi^{-1} maps a row to its pivot column
  GradedMatrix V;                            // unipotent upper triangular, degree 0
  bool strict = false;
};

/// Pivots on the leftmost nonzero entry of each row in turn. Raises
/// NotHomogeneous, or Singular naming the row that reduces to zero.
BruhatForm bruhat_decompose(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

/// P_pi V P_pi^{-1} is unipotent upper triangular.
bool is_strict(const ShiftedMatrixAlgebra& s, const BruhatForm& form);

/// T U P_pi V.
GradedMatrix reconstruct(const ShiftedMatrixAlgebra& s, const BruhatForm& form);
GradedMatrix certificate_product(const ShiftedMatrixAlgebra& s, const std::vector<ElementaryFactor>& factors);

bool is_unipotent_upper(const GradedMatrix& m, const GradedDivisionAlgebra& e);
bool is_unipotent_lower(const GradedMatrix& m, const GradedDivisionAlgebra& e);
/// sum_k (-N)^k for V = I + N unipotent.
GradedMatrix unipotent_inverse(const ShiftedMatrixAlgebra& s, const GradedMatrix& v);

}  // namespace gda
