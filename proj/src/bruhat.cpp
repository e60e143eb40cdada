#include "gda/bruhat.hpp"

#include <optional>

#include "gda/error.hpp"

namespace gda {

namespace {

using Cell = std::optional<HomogeneousUnit>;

Cell add_cells(const Cell& a, const Cell& b) {
  if (!a) return b;
  if (!b) return a;
  FieldElement c = a->coeff + b->coeff;
  if (c.is_zero()) return std::nullopt;
  return HomogeneousUnit{c, a->degree};
}

bool is_one(const AlgebraElement& x, const GradedDivisionAlgebra& e) {
  auto u = x.as_homogeneous();
  return u && *u == e.one();
}

}  // namespace

BruhatForm bruhat_decompose(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  const auto& E = s.algebra();
  const std::size_t n = s.n();
  auto h = s.homogeneity(a);
  if (h.kind == Homogeneity::Kind::NotHomogeneous) raise(ErrorCode::NotHomogeneous, "matrix is not homogeneous");
  if (h.kind == Homogeneity::Kind::Zero) raise(ErrorCode::Singular, "row 1 is zero");

  std::vector<std::vector<Cell>> w(n, std::vector<Cell>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a.at(i, j).as_homogeneous();

  BruhatForm form;
  std::vector<std::size_t> rho(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t col = 0;
    while (col < n && !w[j][col]) ++col;
    if (col == n) raise(ErrorCode::Singular, "row " + std::to_string(j + 1) + " reduces to zero");
    rho[j] = col;
    const HomogeneousUnit pivot_inv = E.invert_homogeneous(*w[j][col]);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (!w[i][col]) continue;
      // row_i -= x row_j with x = a_{i rho(j)} a_{j rho(j)}^{-1}, deg x = delta_j - delta_i
      const HomogeneousUnit x = E.multiply(*w[i][col], pivot_inv);
      HomogeneousUnit neg_x{-x.coeff, x.degree};
      for (std::size_t c = 0; c < n; ++c)
        if (w[j][c]) w[i][c] = add_cells(w[i][c], E.multiply(neg_x, *w[j][c]));
      form.certificate.push_back({i, j, x});
    }
  }

  Permutation rho_perm(rho);
  form.perm = rho_perm.inverse();
  form.V = GradedMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    form.U.push_back(*w[j][rho[j]]);
    const HomogeneousUnit u_inv = E.invert_homogeneous(*w[j][rho[j]]);
    for (std::size_t c = 0; c < n; ++c)
      if (w[j][c]) form.V.at(rho[j], c) = AlgebraElement(E.multiply(u_inv, *w[j][c]));
  }
  form.T = certificate_product(s, form.certificate);
  form.strict = is_strict(s, form);
  return form;
}

GradedMatrix certificate_product(const ShiftedMatrixAlgebra& s, const std::vector<ElementaryFactor>& factors) {
  GradedMatrix t = s.identity();
  for (const auto& f : factors) t = s.multiply(t, s.elementary(f.i, f.j, AlgebraElement(f.x)));
  return t;
}

bool is_unipotent_upper(const GradedMatrix& m, const GradedDivisionAlgebra& e) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!is_one(m.at(i, i), e)) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!m.at(i, j).is_zero()) return false;
  }
  return true;
}

bool is_unipotent_lower(const GradedMatrix& m, const GradedDivisionAlgebra& e) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!is_one(m.at(i, i), e)) return false;
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!m.at(i, j).is_zero()) return false;
  }
  return true;
}

bool is_strict(const ShiftedMatrixAlgebra& s, const BruhatForm& form) {
  if (!is_unipotent_upper(form.V, s.algebra())) return false;
  // (P V P^{-1})_{pi(a), pi(b)} = V_{a b}
  const std::size_t n = s.n();
  GradedMatrix c(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) c.at(form.perm(a), form.perm(b)) = form.V.at(a, b);
  return is_unipotent_upper(c, s.algebra());
}

GradedMatrix reconstruct(const ShiftedMatrixAlgebra& s, const BruhatForm& form) {
  GradedMatrix up = s.monomial(MonomialMatrix{form.U, form.perm});
  return s.multiply(s.multiply(form.T, up), form.V);
}

GradedMatrix unipotent_inverse(const ShiftedMatrixAlgebra& s, const GradedMatrix& v) {
  const std::size_t n = s.n();
  GradedMatrix neg_n(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) neg_n.at(i, j) = -v.at(i, j);
  GradedMatrix sum = s.identity(), power = s.identity();
  for (std::size_t k = 1; k < n; ++k) {
    power = s.multiply(power, neg_n);
    sum = s.add(sum, power);
  }
  return sum;
}

}  // namespace gda
