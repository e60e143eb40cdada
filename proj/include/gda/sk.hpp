#pragma once

// Reduced norms on S_0, the maps xi/eta, and closed forms for SK(E) and SK^h(S).

#include <string>
#include <vector>

#include "gda/io.hpp"

namespace gda {

struct GroupDescription {
  /// Invariant factors; meaningful only when finite.
  FiniteAbelianGroup group;
  bool finite = true;
  /// The formula or procedure that produced the result.
  std::string provenance;
  /// Named constituents, e.g. the kernel and SK(E) orders.
  Json components = Json::object();
  /// Symbolic form, used when the group is not finite.
  std::string structure;
  std::vector<std::string> flags;
};

Json to_json(const GroupDescription& g);

using NrdValue = FieldElement;

/// Product of the block determinants. Raises NotDegreeZero or Singular.
NrdValue nrd_S0(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);
/// nrd_S0(A)^s with s = ind(E).
NrdValue nrd_S(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);
/// Membership in S_h^(1): degree 0 and nrd_S(A) = 1.
bool in_Sh1(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

/// c -> diag(c, 1, ..., 1) in the epsilon-form, for c in T_0 with c^s = 1.
GradedMatrix eta(const ShiftedMatrixAlgebra& s, const FieldElement& c);
/// The class of A in E^(1) / [E_0^*, E_0^*] = E^(1), E_0 being commutative.
FieldElement xi(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);

GroupDescription sk_E(const GradedDivisionAlgebra& e);
GroupDescription kernel_group(const GradedDivisionAlgebra& e, std::size_t n);
/// Raises ExceptionalF2Config for M_2(F_2).
GroupDescription sk_h_unshifted(const GradedDivisionAlgebra& e, std::size_t n);
/// Shifts (0, delta, ..., (n-1) delta). Raises OrderTooSmall unless the order of
/// delta modulo Gamma_E exceeds 3n. Over cyclotomic fields the result is structural.
GroupDescription sk_h_shifted(const GradedDivisionAlgebra& e, std::size_t n, const GradeVector& delta);

/// The shift vector (0, delta, ..., (n-1) delta).
std::vector<GradeVector> arithmetic_shifts(const GradeVector& delta, std::size_t n);

}  // namespace gda
