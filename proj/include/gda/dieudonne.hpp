#pragma once

// The homogeneous Dieudonne determinant det_E : S_h^* -> E_h^*/[E_h^*, E_h^*].

#include <optional>
#include <vector>

#include "gda/bruhat.hpp"
#include "gda/gmatrix.hpp"

namespace gda {

using DetValue = AbelianizedUnit;

/// Class of sgn(pi) u_1 ... u_n. Raises NotHomogeneous.
DetValue delta_monomial(const ShiftedMatrixAlgebra& s, const MonomialMatrix& m);

/// Product of the ordinary determinants of the S_0 blocks (E_0 = T_0 is a field).
/// Raises NotDegreeZero, or Singular when some block is singular.
FieldElement det0(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);
/// det0 followed by E_0^* -> E_h^*/[E_h^*, E_h^*].
DetValue det0_image(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

/// Via the strict Bruhat form. Raises Singular or NotHomogeneous.
DetValue det_E(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);
DetValue det_E(const ShiftedMatrixAlgebra& s, const BruhatForm& form);

/// Serial reference and OpenMP batch evaluation; identical results.
std::vector<DetValue> det_E_batch_serial(const ShiftedMatrixAlgebra& s, const std::vector<GradedMatrix>& as);
std::vector<DetValue> det_E_batch(const ShiftedMatrixAlgebra& s, const std::vector<GradedMatrix>& as);

/// A = B D with B a product of homogeneous elementary matrices and D the
/// block diagonal matrix diag(1, ..., 1, c_l) per block, prod c_l in mu_e.
struct KernelWitness {
  std::vector<ElementaryFactor> factors;
  std::vector<FieldElement> block_scalars;
  GradedMatrix D;
};

struct KernelResult {
  bool in_kernel = false;
  DetValue det;
  std::optional<KernelWitness> witness;
};

KernelResult in_kernel(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

/// The element A = B D of a witness, multiplied out.
GradedMatrix witness_product(const ShiftedMatrixAlgebra& s, const KernelWitness& w);

/// det0 image equals det_E on a degree-0 invertible matrix.
bool check_diagram(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

/// Leibniz expansion for a graded field (commutative E). Raises ValidationError otherwise.
AlgebraElement commutative_determinant(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

}  // namespace gda
