#include "gda/sampling.hpp"

#include "gda/error.hpp"

namespace gda {

FieldElement random_field_element(const CoefficientField& f, Rng& rng) {
  if (f.is_finite()) return f.from_integer(static_cast<long>(rng() % f.modulus()));
  std::uniform_int_distribution<int> c(-2, 2);
  std::vector<mpq_class> poly(f.degree());
  for (auto& x : poly) x = c(rng);
  return make_cyclotomic_element(f, std::move(poly));
}

FieldElement random_nonzero(const CoefficientField& f, Rng& rng) {
  for (;;) {
    auto x = random_field_element(f, rng);
    if (!x.is_zero()) return x;
  }
}

GradeVector random_degree(const GradedDivisionAlgebra& e, Rng& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<std::int64_t> x(e.basis().size());
  for (auto& v : x) v = d(rng);
  return e.from_coordinates(x);
}

HomogeneousUnit random_unit(const GradedDivisionAlgebra& e, const GradeVector& degree, Rng& rng) {
  return HomogeneousUnit{random_nonzero(e.field(), rng), degree};
}

HomogeneousUnit random_unit(const GradedDivisionAlgebra& e, Rng& rng) {
  return random_unit(e, random_degree(e, rng), rng);
}

FieldMatrix random_invertible_field_matrix(const CoefficientField& f, std::size_t r, Rng& rng) {
  for (;;) {
    FieldMatrix m(r, std::vector<FieldElement>(r, f.zero()));
    for (auto& row : m)
      for (auto& x : row) x = random_field_element(f, rng);
    if (!field_determinant(m).is_zero()) return m;
  }
}

GradedMatrix random_degree0_invertible(const ShiftedMatrixAlgebra& s, Rng& rng) {
  std::vector<FieldMatrix> blocks;
  for (auto r : s.epsilon_form().multiplicities)
    blocks.push_back(random_invertible_field_matrix(s.algebra().field(), r, rng));
  return s.block_assemble(blocks);
}

MonomialMatrix random_monomial(const ShiftedMatrixAlgebra& s, Rng& rng) {
  const auto& E = s.algebra();
  const auto stars = s.gamma_s_star();
  const auto& [sigma, lambda0] = stars.witnesses[rng() % stars.witnesses.size()];
  // Reorder within cosets: any rho with delta_i - delta_rho(i) in lambda0 + Gamma_E works.
  const GradeVector lambda = lambda0 + random_degree(E, rng);
  std::vector<std::size_t> rho = sigma.images();
  for (int t = 0; t < 8; ++t) {
    std::size_t a = rng() % s.n(), b = rng() % s.n();
    const auto& ge = E.gamma_e();
    if (ge.reduce(s.shifts()[a] - s.shifts()[rho[b]]) == ge.reduce(lambda0) &&
        ge.reduce(s.shifts()[b] - s.shifts()[rho[a]]) == ge.reduce(lambda0))
      std::swap(rho[a], rho[b]);
  }
  MonomialMatrix m;
  for (std::size_t i = 0; i < s.n(); ++i)
    m.diag.push_back(random_unit(E, s.entry_degree(lambda, i, rho[i]), rng));
  m.perm = Permutation(rho).inverse();
  return m;
}

GradedMatrix random_homogeneous_invertible(const ShiftedMatrixAlgebra& s, Rng& rng) {
  GradedMatrix m = s.monomial(random_monomial(s, rng));
  return s.multiply(s.multiply(random_degree0_invertible(s, rng), m), random_degree0_invertible(s, rng));
}

ElementaryFactor random_elementary(const ShiftedMatrixAlgebra& s, Rng& rng) {
  const auto& ge = s.algebra().gamma_e();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j)
      if (i != j && ge.contains(s.shifts()[j] - s.shifts()[i])) slots.emplace_back(i, j);
  if (slots.empty()) raise(ErrorCode::WrongDegree, "no homogeneous elementary matrices in this algebra");
  auto [i, j] = slots[rng() % slots.size()];
  return ElementaryFactor{i, j, random_unit(s.algebra(), s.shifts()[j] - s.shifts()[i], rng)};
}

namespace {

BruhatForm random_form(const ShiftedMatrixAlgebra& s, Rng& rng, bool strict) {
  const auto& E = s.algebra();
  const auto& ge = E.gamma_e();
  const std::size_t n = s.n();
  BruhatForm form;
  MonomialMatrix m = random_monomial(s, rng);
  form.U = m.diag;
  form.perm = m.perm;
  // Only slots with delta_j - delta_i in Gamma_E can be nonzero in degree 0.
  auto entry = [&](std::size_t i, std::size_t j) -> AlgebraElement {
    GradeVector d = s.shifts()[j] - s.shifts()[i];
    if (!ge.contains(d) || rng() % 3 == 0) return {};
    return AlgebraElement(random_unit(E, d, rng));
  };
  form.T = s.identity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) form.T.at(i, j) = entry(i, j);
  form.V = s.identity();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!strict || form.perm(a) < form.perm(b)) form.V.at(a, b) = entry(a, b);
  form.strict = is_strict(s, form);
  return form;
}

}  // namespace

BruhatForm random_strict_form(const ShiftedMatrixAlgebra& s, Rng& rng) { return random_form(s, rng, true); }
BruhatForm random_bruhat_form(const ShiftedMatrixAlgebra& s, Rng& rng) { return random_form(s, rng, false); }

}  // namespace gda
