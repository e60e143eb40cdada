#pragma once

// Random generators for tests, the acceptance suite and `gda verify`.

#include <random>

#include "gda/bruhat.hpp"
#include "gda/gmatrix.hpp"

namespace gda {

using Rng = std::mt19937_64;

FieldElement random_field_element(const CoefficientField& f, Rng& rng);
FieldElement random_nonzero(const CoefficientField& f, Rng& rng);
/// Coordinates drawn from [-2, 2] in the Gamma_E basis.
GradeVector random_degree(const GradedDivisionAlgebra& e, Rng& rng);
HomogeneousUnit random_unit(const GradedDivisionAlgebra& e, const GradeVector& degree, Rng& rng);
HomogeneousUnit random_unit(const GradedDivisionAlgebra& e, Rng& rng);

FieldMatrix random_invertible_field_matrix(const CoefficientField& f, std::size_t r, Rng& rng);
/// Block-diagonal in the epsilon-form, so a uniform-ish element of S_0^*.
GradedMatrix random_degree0_invertible(const ShiftedMatrixAlgebra& s, Rng& rng);
/// A random monomial matrix homogeneous of some degree in Gamma_S^*.
MonomialMatrix random_monomial(const ShiftedMatrixAlgebra& s, Rng& rng);
/// B M B' with B, B' in S_0^* and M monomial: covers S_h^* = S_0^* M.
GradedMatrix random_homogeneous_invertible(const ShiftedMatrixAlgebra& s, Rng& rng);
/// A random homogeneous elementary matrix e_ij(x) with deg x = delta_j - delta_i (x may be 0
/// only when no such degree exists, in which case i, j are retried).
ElementaryFactor random_elementary(const ShiftedMatrixAlgebra& s, Rng& rng);

/// A random strict tuple (T, U, pi, V); the returned form has strict = true.
BruhatForm random_strict_form(const ShiftedMatrixAlgebra& s, Rng& rng);
/// A random Bruhat tuple with an arbitrary unipotent V (possibly not strict).
BruhatForm random_bruhat_form(const ShiftedMatrixAlgebra& s, Rng& rng);

}  // namespace gda
