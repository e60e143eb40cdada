#pragma once

// Brute-force finite group computations over GF(p): subgroup closure, the
// commutator subgroup of S_h^*, and SK^h computed from its definition.

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "gda/sk.hpp"

namespace gda {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// GDA_BUDGET when set and valid, otherwise kDefaultBudget.
std::uint64_t default_budget();

/// An n x n matrix of residues mod p, row-major.
struct ModMatrix {
  std::vector<std::uint32_t> a;
  bool operator==(const ModMatrix&) const = default;
};

class ModRing {
 public:
  /// Raises ValidationError when p^(n^2) does not fit the 64-bit key.
  ModRing(std::uint32_t p, std::size_t n);

  std::uint32_t p() const { return p_; }
  std::size_t n() const { return n_; }

  ModMatrix identity() const;
  ModMatrix elementary(std::size_t i, std::size_t j, std::uint32_t x) const;
  ModMatrix diagonal(const std::vector<std::uint32_t>& d) const;
  ModMatrix multiply(const ModMatrix& x, const ModMatrix& y) const;
  /// Raises Singular.
  ModMatrix inverse(const ModMatrix& x) const;
  ModMatrix power(ModMatrix x, std::uint64_t k) const;
  ModMatrix commutator(const ModMatrix& x, const ModMatrix& y) const;
  /// Determinant of the principal submatrix on [start, start + r).
  std::uint32_t block_det(const ModMatrix& x, std::size_t start, std::size_t r) const;
  /// Base-p digits of the entries: the canonical key.
  std::uint64_t key(const ModMatrix& x) const;

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inv(std::uint32_t x) const;
  std::uint32_t pow(std::uint32_t x, std::uint64_t k) const;

 private:
  std::uint32_t p_;
  std::size_t n_;
};

class FiniteMatrixGroup {
 public:
  explicit FiniteMatrixGroup(ModRing ring) : ring_(ring) {}

  const ModRing& ring() const { return ring_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ModMatrix>& elements() const { return elements_; }
  bool contains(const ModMatrix& x) const { return index_.count(ring_.key(x)) > 0; }
  /// Position of x in elements(), or size() when absent.
  std::size_t find(const ModMatrix& x) const;
  /// Appends x when new; returns true if it was added.
  bool insert(const ModMatrix& x);

 private:
  ModRing ring_;
  std::vector<ModMatrix> elements_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Level-synchronous breadth-first closure; the parallel version computes each
/// level's products under OpenMP and merges them in serial order, so both
/// return the same elements in the same order. Raises SizeBudgetExceeded.
FiniteMatrixGroup closure_serial(const ModRing& ring, const std::vector<ModMatrix>& gens, std::uint64_t budget);
FiniteMatrixGroup closure(const ModRing& ring, const std::vector<ModMatrix>& gens, std::uint64_t budget);

/// Degree-0 matrices in the epsilon-form of S as residues, and back.
/// Raise InfiniteCoefficientField for cyclotomic T_0.
ModMatrix to_mod(const ShiftedMatrixAlgebra& s, const GradedMatrix& a);
GradedMatrix from_mod(const ShiftedMatrixAlgebra& s, const ModMatrix& m);

struct OracleOptions {
  enum class Route { Auto, Full, Abelianized };
  std::uint64_t budget = kDefaultBudget;
  Route route = Route::Auto;
  bool parallel = true;
};

/// Generators of S_0^* in the epsilon-form: elementary e_ij(1) within each
/// block and diag(g, 1, ..., 1) per block.
std::vector<ModMatrix> s0_generators(const ShiftedMatrixAlgebra& s);

/// |S_0^*| = prod |GL_{r_l}(p)|, saturating at 2^64 - 1.
std::uint64_t s0_order(const ShiftedMatrixAlgebra& s);

/// The normal closure in S_h^* of the commutators of a generating set of
/// S_h^* = <S_0^*, scalar monomials, Gamma_S^* witness monomials>.
FiniteMatrixGroup commutator_subgroup_Sh(const ShiftedMatrixAlgebra& s, const OracleOptions& opt = {});

/// S_h^(1) / [S_h^*, S_h^*] by enumeration and coset counting, or through the
/// block-determinant image when S_0^* exceeds the budget.
GroupDescription sk_oracle(const ShiftedMatrixAlgebra& s, const OracleOptions& opt = {});

/// {A in S_0^* : det_E(A) = 1}, filtered with the exact Bruhat determinant.
FiniteMatrixGroup kernel_by_determinant(const ShiftedMatrixAlgebra& s, const OracleOptions& opt = {});
/// Closure of all homogeneous elementary matrices and the D-blocks with prod c_l in mu_e.
FiniteMatrixGroup kernel_by_generators(const ShiftedMatrixAlgebra& s, const OracleOptions& opt = {});

bool same_elements(const FiniteMatrixGroup& a, const FiniteMatrixGroup& b);

/// Invariant factors of a finite abelian group of the given order from the
/// counts #{x : x^k = 1} at every prime power k dividing the order.
FiniteAbelianGroup group_from_torsion_counts(std::uint64_t order, const std::function<std::uint64_t(std::uint64_t)>& count);

}  // namespace gda
