#include "gda/gmatrix.hpp"

#include <set>

#include "gda/bruhat.hpp"
#include "gda/error.hpp"

namespace gda {

FieldElement field_determinant(FieldMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) raise(ErrorCode::ValidationError, "determinant of an empty matrix");
  const auto& f = m[0][0].field();
  FieldElement det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const FieldElement inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const FieldElement t = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= t * m[c][j];
    }
  }
  return det;
}

bool GradedMatrix::is_zero() const {
  for (const auto& x : entries_)
    if (!x.is_zero()) return false;
  return true;
}

ShiftedMatrixAlgebra::ShiftedMatrixAlgebra(std::shared_ptr<const GradedDivisionAlgebra> algebra, std::size_t n,
                                           std::vector<GradeVector> shifts)
    : algebra_(std::move(algebra)), n_(n), shifts_(std::move(shifts)) {
  if (n_ < 1 || n_ > 8) raise(ErrorCode::ValidationError, "matrix size n must lie in [1, 8]");
  if (shifts_.size() != n_)
    raise(ErrorCode::ValidationError, "expected " + std::to_string(n_) + " shifts, got " + std::to_string(shifts_.size()));
  for (const auto& d : shifts_)
    if (d.size() != algebra_->ambient_rank())
      raise(ErrorCode::ValidationError, "shift " + to_string(d) + " does not match the ambient rank");

  const Lattice& ge = algebra_->gamma_e();
  std::vector<GradeVector> keys;
  eps_.class_of.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    GradeVector key = ge.reduce(shifts_[i]);
    std::size_t cls = 0;
    while (cls < keys.size() && keys[cls] != key) ++cls;
    if (cls == keys.size()) {
      keys.push_back(key);
      eps_.classes.push_back(shifts_[i]);
      eps_.multiplicities.push_back(0);
    }
    eps_.class_of[i] = cls;
    ++eps_.multiplicities[cls];
  }
  std::size_t start = 0;
  for (auto r : eps_.multiplicities) {
    eps_.block_start.push_back(start);
    start += r;
  }
  std::vector<std::size_t> next = eps_.block_start, images(n_);
  eps_.shifts.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t cls = eps_.class_of[i];
    images[i] = next[cls]++;
    eps_.translations.push_back(eps_.classes[cls] - shifts_[i]);
    eps_.shifts[images[i]] = eps_.classes[cls];
  }
  eps_.perm = Permutation(std::move(images));

  const auto& f = algebra_->field();
  exceptional_f2_ = n_ == 2 && f.is_finite() && f.modulus() == 2;
  if (exceptional_f2_) warnings_.push_back("M_n(E_0) = M_2(F_2): exceptional configuration, SK formulas unavailable");
}

ShiftedMatrixAlgebra ShiftedMatrixAlgebra::unshifted(std::shared_ptr<const GradedDivisionAlgebra> algebra,
                                                     std::size_t n) {
  const std::size_t k = algebra->ambient_rank();
  return ShiftedMatrixAlgebra(std::move(algebra), n, std::vector<GradeVector>(n, GradeVector(k, 0)));
}

bool ShiftedMatrixAlgebra::is_epsilon_form() const {
  if (!eps_.perm.is_identity()) return false;
  for (const auto& a : eps_.translations)
    if (!is_zero(a)) return false;
  return true;
}

GradeVector ShiftedMatrixAlgebra::entry_degree(const GradeVector& lambda, std::size_t i, std::size_t j) const {
  return lambda + shifts_[j] - shifts_[i];
}

Homogeneity ShiftedMatrixAlgebra::homogeneity(const GradedMatrix& a) const {
  Homogeneity h;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& x = a.at(i, j);
      if (x.is_zero()) continue;
      auto u = x.as_homogeneous();
      if (!u) return {Homogeneity::Kind::NotHomogeneous, {}};
      GradeVector lambda = u->degree - shifts_[j] + shifts_[i];
      if (h.kind == Homogeneity::Kind::Zero) {
        h = {Homogeneity::Kind::Homogeneous, lambda};
      } else if (lambda != h.degree) {
        return {Homogeneity::Kind::NotHomogeneous, {}};
      }
    }
  return h;
}

GradeVector ShiftedMatrixAlgebra::degree(const GradedMatrix& a) const {
  auto h = homogeneity(a);
  if (h.kind == Homogeneity::Kind::NotHomogeneous) raise(ErrorCode::NotHomogeneous, "matrix is not homogeneous");
  if (h.kind == Homogeneity::Kind::Zero) raise(ErrorCode::Singular, "zero matrix");
  return h.degree;
}

std::vector<GradeVector> ShiftedMatrixAlgebra::grade_set() const {
  std::set<GradeVector> cosets;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) cosets.insert(algebra_->gamma_e().reduce(shifts_[j] - shifts_[i]));
  return {cosets.begin(), cosets.end()};
}

GammaSStar ShiftedMatrixAlgebra::gamma_s_star() const {
  const Lattice& ge = algebra_->gamma_e();
  GammaSStar out{ge, {}};
  std::set<GradeVector> found;
  std::vector<std::size_t> sigma(n_);
  std::vector<bool> used(n_, false);

  // Complete sigma on indices >= i keeping delta_i - delta_sigma(i) in the coset of key.
  auto extend = [&](auto&& self, std::size_t i, const GradeVector& key) -> bool {
    if (i == n_) return true;
    for (std::size_t t = 0; t < n_; ++t) {
      if (used[t] || ge.reduce(shifts_[i] - shifts_[t]) != key) continue;
      used[t] = true;
      sigma[i] = t;
      if (self(self, i + 1, key)) return true;
      used[t] = false;
    }
    return false;
  };

  for (std::size_t t = 0; t < n_; ++t) {
    GradeVector lambda = shifts_[0] - shifts_[t];
    GradeVector key = ge.reduce(lambda);
    if (found.count(key)) continue;
    std::fill(used.begin(), used.end(), false);
    used[t] = true;
    sigma[0] = t;
    if (!extend(extend, 1, key)) continue;
    found.insert(key);
    out.witnesses.emplace_back(Permutation(sigma), lambda);
    out.lattice = out.lattice + Lattice(algebra_->ambient_rank(), std::vector<GradeVector>{lambda});
  }
  return out;
}

ShiftedMatrixAlgebra ShiftedMatrixAlgebra::epsilon_algebra() const {
  return ShiftedMatrixAlgebra(algebra_, n_, eps_.shifts);
}

GradedMatrix ShiftedMatrixAlgebra::to_epsilon(const GradedMatrix& a) const {
  const auto& E = *algebra_;
  GradedMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (a.at(i, j).is_zero()) continue;
      auto& dst = out.at(eps_.perm(i), eps_.perm(j));
      if (trivial_translation(i) && trivial_translation(j)) {
        dst = a.at(i, j);
        continue;
      }
      AlgebraElement left(E.invert_homogeneous(E.monomial(eps_.translations[i])));
      AlgebraElement right(E.monomial(eps_.translations[j]));
      dst = E.multiply(E.multiply(left, a.at(i, j)), right);
    }
  return out;
}

GradedMatrix ShiftedMatrixAlgebra::from_epsilon(const GradedMatrix& a) const {
  const auto& E = *algebra_;
  GradedMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& x = a.at(eps_.perm(i), eps_.perm(j));
      if (x.is_zero()) continue;
      if (trivial_translation(i) && trivial_translation(j)) {
        out.at(i, j) = x;
        continue;
      }
      AlgebraElement left(E.monomial(eps_.translations[i]));
      AlgebraElement right(E.invert_homogeneous(E.monomial(eps_.translations[j])));
      out.at(i, j) = E.multiply(E.multiply(left, x), right);
    }
  return out;
}

std::vector<FieldMatrix> ShiftedMatrixAlgebra::block_decompose(const GradedMatrix& a) const {
  auto h = homogeneity(a);
  if (h.kind == Homogeneity::Kind::NotHomogeneous || (h.homogeneous() && !is_zero(h.degree)))
    raise(ErrorCode::NotDegreeZero, "matrix is not homogeneous of degree 0");
  const auto& f = algebra_->field();
  GradedMatrix b = to_epsilon(a);
  std::vector<FieldMatrix> blocks;
  for (std::size_t l = 0; l < eps_.multiplicities.size(); ++l) {
    const std::size_t r = eps_.multiplicities[l], s0 = eps_.block_start[l];
    FieldMatrix block(r, std::vector<FieldElement>(r, f.zero()));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (auto u = b.at(s0 + i, s0 + j).as_homogeneous()) block[i][j] = u->coeff;
    blocks.push_back(std::move(block));
  }
  return blocks;
}

GradedMatrix ShiftedMatrixAlgebra::block_assemble(const std::vector<FieldMatrix>& blocks) const {
  if (blocks.size() != eps_.multiplicities.size()) raise(ErrorCode::ValidationError, "wrong number of blocks");
  GradedMatrix b(n_);
  const GradeVector zero(algebra_->ambient_rank(), 0);
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    const std::size_t r = eps_.multiplicities[l], s0 = eps_.block_start[l];
    if (blocks[l].size() != r) raise(ErrorCode::ValidationError, "block has wrong size");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) b.at(s0 + i, s0 + j) = AlgebraElement(HomogeneousUnit{blocks[l][i][j], zero});
  }
  return from_epsilon(b);
}

GradedMatrix ShiftedMatrixAlgebra::identity() const {
  return diagonal(std::vector<HomogeneousUnit>(n_, algebra_->one()));
}

GradedMatrix ShiftedMatrixAlgebra::elementary(std::size_t i, std::size_t j, const AlgebraElement& x) const {
  if (i == j) raise(ErrorCode::SamePosition, "elementary matrix needs i != j");
  if (i >= n_ || j >= n_) raise(ErrorCode::ValidationError, "elementary matrix index out of range");
  GradedMatrix m = identity();
  if (x.is_zero()) return m;
  auto u = x.as_homogeneous();
  const GradeVector want = shifts_[j] - shifts_[i];
  if (!u || u->degree != want)
    raise(ErrorCode::WrongDegree, "e_" + std::to_string(i + 1) + std::to_string(j + 1) + "(x) needs deg x = " +
                                      to_string(want));
  m.at(i, j) = x;
  return m;
}

GradedMatrix ShiftedMatrixAlgebra::diagonal(const std::vector<HomogeneousUnit>& units) const {
  if (units.size() != n_) raise(ErrorCode::ValidationError, "diagonal needs n units");
  GradedMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) m.at(i, i) = AlgebraElement(units[i]);
  return m;
}

GradedMatrix ShiftedMatrixAlgebra::scalar(const HomogeneousUnit& u) const {
  return diagonal(std::vector<HomogeneousUnit>(n_, u));
}

GradedMatrix ShiftedMatrixAlgebra::permutation_matrix(const Permutation& p) const {
  GradedMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) m.at(p(i), i) = AlgebraElement(algebra_->one());
  return m;
}

GradedMatrix ShiftedMatrixAlgebra::monomial(const MonomialMatrix& mm) const {
  if (mm.diag.size() != n_ || mm.perm.size() != n_) raise(ErrorCode::ValidationError, "monomial matrix has wrong size");
  const Permutation rho = mm.perm.inverse();
  GradedMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) m.at(i, rho(i)) = AlgebraElement(mm.diag[i]);
  return m;
}

GradedMatrix ShiftedMatrixAlgebra::multiply(const GradedMatrix& a, const GradedMatrix& b) const {
  const auto& E = *algebra_;
  GradedMatrix c(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        c.at(i, j) = c.at(i, j) + E.multiply(a.at(i, k), b.at(k, j));
      }
    }
  return c;
}

GradedMatrix ShiftedMatrixAlgebra::add(const GradedMatrix& a, const GradedMatrix& b) const {
  GradedMatrix c(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

GradedMatrix ShiftedMatrixAlgebra::invert(const GradedMatrix& a) const {
  const auto& E = *algebra_;
  BruhatForm form = bruhat_decompose(*this, a);
  // (U P)^{-1} carries u_i^{-1} at (rho(i), i).
  const Permutation rho = form.perm.inverse();
  GradedMatrix m_inv(n_);
  for (std::size_t i = 0; i < n_; ++i) m_inv.at(rho(i), i) = AlgebraElement(E.invert_homogeneous(form.U[i]));
  // T^{-1} = e(-x_last) ... e(-x_first).
  GradedMatrix t_inv = identity();
  for (auto it = form.certificate.rbegin(); it != form.certificate.rend(); ++it)
    t_inv = multiply(t_inv, elementary(it->i, it->j, -AlgebraElement(it->x)));
  return multiply(multiply(unipotent_inverse(*this, form.V), m_inv), t_inv);
}

}  // namespace gda
