#include "gda/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "gda/error.hpp"

namespace gda {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod128(__int128 a, std::int64_t m) {
  auto r = static_cast<std::int64_t>(a % m);
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(const HomogeneousUnit& u) {
  if (!u.coeff.is_zero()) terms_.emplace(u.degree, u.coeff);
}

AlgebraElement AlgebraElement::from_terms(const Terms& terms) {
  AlgebraElement x;
  for (const auto& [deg, c] : terms) x.add_term(deg, c);
  return x;
}

void AlgebraElement::add_term(const GradeVector& degree, const FieldElement& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(degree);
  if (it == terms_.end()) {
    terms_.emplace(degree, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<HomogeneousUnit> AlgebraElement::as_homogeneous() const {
  if (terms_.size() != 1) return std::nullopt;
  return HomogeneousUnit{terms_.begin()->second, terms_.begin()->first};
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (const auto& [deg, c] : o.terms_) r.add_term(deg, c);
  return r;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& [deg, c] : r.terms_) c = -c;
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::scaled(const FieldElement& c) const {
  if (c.is_zero()) return {};
  AlgebraElement r = *this;
  for (auto& [deg, x] : r.terms_) x *= c;
  return r;
}

// ---------------------------------------------------------------------------
// Construction

GradedDivisionAlgebra GradedDivisionAlgebra::make(const AlgebraSpec& spec) {
  const std::size_t k = spec.ambient_rank, r = spec.gamma_e_basis.size();
  if (k < 1 || k > 8) raise(ErrorCode::ValidationError, "ambient_rank must lie in [1, 8]");
  for (const auto& g : spec.gamma_e_basis)
    if (g.size() != k) raise(ErrorCode::ValidationError, "gamma_e vector " + to_string(g) + " has wrong length");
  if (spec.commutation.size() != r)
    raise(ErrorCode::ValidationError, "commutation matrix must be " + std::to_string(r) + " x " + std::to_string(r));
  for (const auto& row : spec.commutation)
    if (row.size() != r) raise(ErrorCode::ValidationError, "commutation matrix is not square");

  GradedDivisionAlgebra a(spec);
  const auto& f = spec.field;
  a.gamma_e_ = Lattice(k, spec.gamma_e_basis);
  if (a.gamma_e_.rank() != r) raise(ErrorCode::ValidationError, "gamma_e generators are not linearly independent");

  // Entries must be roots of unity forming an alternating bicharacter.
  Integer m = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& c = spec.commutation[i][j];
      if (c.is_zero()) raise(ErrorCode::NotRootOfUnity, "commutation entry (" + std::to_string(i + 1) + "," +
                                                             std::to_string(j + 1) + ") is zero");
      auto order = order_of_unit(c);
      if (!order)
        raise(ErrorCode::NotRootOfUnity, "commutation entry (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ") = " + c.to_string() +
                                             " is not a root of unity");
      if (i == j && !c.is_one())
        raise(ErrorCode::ValidationError, "diagonal commutation entries must be 1");
      if (!(c * spec.commutation[j][i]).is_one())
        raise(ErrorCode::ValidationError, "commutation matrix must satisfy c_ji = c_ij^-1");
      m = lcm(m, Integer(static_cast<unsigned long>(*order)));
    }
  a.m_ = static_cast<std::uint64_t>(to_int64(m));

  const FieldElement zeta = mu(f, a.m_).generator;
  if (a.m_ <= 4096) {
    std::vector<FieldElement> powers;
    FieldElement x = f.one();
    for (std::uint64_t t = 0; t < a.m_; ++t) {
      powers.push_back(x);
      x *= zeta;
    }
    a.zeta_powers_ = std::make_shared<const std::vector<FieldElement>>(std::move(powers));
  }
  if (f.is_finite()) {
    const std::uint64_t p = f.modulus();
    std::vector<std::uint32_t> table(p, 0);
    const std::uint64_t g = f.primitive_root().residue();
    std::uint64_t x = 1;
    for (std::uint64_t t = 0; t + 1 < p; ++t) {
      table[x] = static_cast<std::uint32_t>(t);
      x = x * g % p;
    }
    a.log_table_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(table));
  }

  a.build_left_inverse();
  a.log_commutation_.assign(r, std::vector<std::int64_t>(r, 0));
  IntMatrix exponents(r, std::vector<Integer>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& c = spec.commutation[i][j];
      std::int64_t log = -1;
      if (f.is_finite()) {
        const std::uint64_t step = (f.modulus() - 1) / a.m_;
        log = static_cast<std::int64_t>((*a.log_table_)[c.residue()] / step);
      } else {
        for (std::uint64_t t = 0; t < a.m_ && log < 0; ++t)
          if ((*a.zeta_powers_)[t] == c) log = static_cast<std::int64_t>(t);
      }
      if (log < 0 || !(a.zeta_power(log) == c)) raise(ErrorCode::NotRootOfUnity, "cannot express " + c.to_string());
      a.log_commutation_[i][j] = log;
      exponents[i][j] = static_cast<long>(log);
    }

  // Radical: x in Z^r with x A = 0 mod m. With U A V = D this is y D = 0 mod m
  // for y = x U^{-1}, so y_i ranges over (m / gcd(d_i, m)) Z.
  std::vector<GradeVector> radical;
  if (r > 0) {
    auto snf = smith_normal_form(exponents);
    for (std::size_t i = 0; i < r; ++i) {
      Integer factor = m / gcd(snf.D[i][i], m);
      std::vector<std::int64_t> coords(r);
      for (std::size_t j = 0; j < r; ++j) coords[j] = to_int64(factor * snf.U[i][j]);
      radical.push_back(a.from_coordinates(coords));
    }
  }
  a.gamma_t_ = Lattice(k, radical);

  auto q = quotient(a.gamma_e_, a.gamma_t_);
  if (!q.is_finite()) raise(ErrorCode::InfiniteIndexRadical, "Gamma_T has infinite index in Gamma_E");
  a.quotient_ = q.torsion;
  const auto& d = a.quotient_.invariant_factors();
  bool paired = d.size() % 2 == 0;
  for (std::size_t i = 0; paired && i < d.size(); i += 2) paired = d[i] == d[i + 1];
  if (!paired)
    raise(ErrorCode::NonSquareIndex, "Gamma_E/Gamma_T = " + a.quotient_.to_string() + " is not of the form H x H");
  Integer s = sqrt(a.quotient_.order());
  a.s_ = static_cast<std::uint64_t>(to_int64(s));
  a.lambda_ = exterior_square(a.quotient_);
  a.e_ = static_cast<std::uint64_t>(to_int64(a.lambda_.exponent()));
  if (Integer(static_cast<unsigned long>(a.e_)) != a.quotient_.exponent())
    raise(ErrorCode::NonSquareIndex, "exp(Lambda) differs from exp(Gamma_E/Gamma_T)");

  a.mu_e_elements_ = a.mu_e().elements();
  return a;
}

// ---------------------------------------------------------------------------
// Coordinates

// Left inverse of the basis restricted to r independent columns.
void GradedDivisionAlgebra::build_left_inverse() {
  const std::size_t r = basis().size();
  std::vector<std::vector<mpq_class>> work;
  for (const auto& g : basis()) work.emplace_back(g.begin(), g.end());
  std::vector<std::size_t> cols;
  std::vector<std::vector<mpq_class>> reduced = work;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ambient_rank() && row < r; ++c) {
    std::size_t piv = row;
    while (piv < r && reduced[piv][c] == 0) ++piv;
    if (piv == r) continue;
    std::swap(reduced[piv], reduced[row]);
    for (std::size_t i = row + 1; i < r; ++i) {
      mpq_class t = reduced[i][c] / reduced[row][c];
      for (std::size_t j = c; j < ambient_rank(); ++j) reduced[i][j] -= t * reduced[row][j];
    }
    cols.push_back(c);
    ++row;
  }
  // Invert the r x r submatrix on the chosen columns (Gauss-Jordan).
  std::vector<std::vector<mpq_class>> sub(r, std::vector<mpq_class>(2 * r, mpq_class(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) sub[i][j] = work[i][cols[j]];
    sub[i][r + i] = 1;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    while (sub[piv][c] == 0) ++piv;
    std::swap(sub[piv], sub[c]);
    mpq_class inv = 1 / sub[c][c];
    for (auto& x : sub[c]) x *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || sub[i][c] == 0) continue;
      mpq_class t = sub[i][c];
      for (std::size_t j = 0; j < 2 * r; ++j) sub[i][j] -= t * sub[c][j];
    }
  }
  Integer den = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) den = lcm(den, sub[i][r + j].get_den());
  std::vector<std::vector<std::int64_t>> inv(r, std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      mpq_class v = sub[i][r + j] * den;
      inv[i][j] = to_int64(v.get_num());
    }
  // inverse of sub maps column coordinates to basis coordinates: x = v_P * inv
  inverse_ = std::move(inv);
  inverse_den_ = to_int64(den);
  pivot_columns_ = std::move(cols);
}

std::vector<std::int64_t> GradedDivisionAlgebra::coordinates(const GradeVector& gamma) const {
  const std::size_t r = basis().size();
  if (gamma.size() != ambient_rank())
    raise(ErrorCode::DegreeOutsideGammaE, "degree " + to_string(gamma) + " has wrong length");
  // x * G_P = v_P, G_P invertible, so x = v_P * G_P^{-1}.
  std::vector<std::int64_t> x(r);
  for (std::size_t j = 0; j < r; ++j) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < r; ++i) acc += static_cast<__int128>(gamma[pivot_columns_[i]]) * inverse_[i][j];
    if (acc % inverse_den_ != 0)
      raise(ErrorCode::DegreeOutsideGammaE, "degree " + to_string(gamma) + " is not in Gamma_E");
    x[j] = static_cast<std::int64_t>(acc / inverse_den_);
  }
  if (from_coordinates(x) != gamma)
    raise(ErrorCode::DegreeOutsideGammaE, "degree " + to_string(gamma) + " is not in Gamma_E");
  return x;
}

GradeVector GradedDivisionAlgebra::from_coordinates(const std::vector<std::int64_t>& x) const {
  GradeVector v(ambient_rank(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += x[i] * basis()[i][j];
  return v;
}

// ---------------------------------------------------------------------------
// Products

FieldElement GradedDivisionAlgebra::zeta_power(std::int64_t k) const {
  const auto mm = static_cast<std::int64_t>(m_);
  k = mod(k, mm);
  if (zeta_powers_) return (*zeta_powers_)[static_cast<std::size_t>(k)];
  return mu(field(), m_).generator.pow(k);
}

FieldElement GradedDivisionAlgebra::sigma(const GradeVector& gamma, const GradeVector& delta) const {
  auto x = coordinates(gamma), y = coordinates(delta);
  const auto mm = static_cast<std::int64_t>(m_);
  __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      acc += static_cast<__int128>(log_commutation_[i][j]) * mod(x[i], mm) * mod(y[j], mm);
  return zeta_power(mod128(acc, mm));
}

FieldElement GradedDivisionAlgebra::beta(const GradeVector& gamma, const GradeVector& delta) const {
  auto x = coordinates(gamma), y = coordinates(delta);
  const auto mm = static_cast<std::int64_t>(m_);
  __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) acc += static_cast<__int128>(log_commutation_[i][j]) * mod(x[i], mm) * mod(y[j], mm);
  return zeta_power(mod128(acc, mm));
}

HomogeneousUnit GradedDivisionAlgebra::one() const {
  return HomogeneousUnit{field().one(), GradeVector(ambient_rank(), 0)};
}

HomogeneousUnit GradedDivisionAlgebra::monomial(const GradeVector& gamma) const {
  coordinates(gamma);
  return HomogeneousUnit{field().one(), gamma};
}

HomogeneousUnit GradedDivisionAlgebra::multiply(const HomogeneousUnit& u, const HomogeneousUnit& v) const {
  return HomogeneousUnit{u.coeff * v.coeff * sigma(u.degree, v.degree), u.degree + v.degree};
}

AlgebraElement GradedDivisionAlgebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
  AlgebraElement r;
  for (const auto& [dx, cx] : x.terms())
    for (const auto& [dy, cy] : y.terms())
      r = r + AlgebraElement(multiply(HomogeneousUnit{cx, dx}, HomogeneousUnit{cy, dy}));
  return r;
}

HomogeneousUnit GradedDivisionAlgebra::invert_homogeneous(const HomogeneousUnit& u) const {
  if (u.coeff.is_zero()) raise(ErrorCode::ZeroCoefficient, "cannot invert a zero coefficient");
  GradeVector neg = -u.degree;
  return HomogeneousUnit{(sigma(u.degree, neg) * u.coeff).inverse(), neg};
}

FieldElement GradedDivisionAlgebra::commutator(const HomogeneousUnit& u, const HomogeneousUnit& v) const {
  auto w = multiply(multiply(multiply(u, v), invert_homogeneous(u)), invert_homogeneous(v));
  return w.coeff;
}

FieldElement GradedDivisionAlgebra::psi(const GradeVector& gamma, const GradeVector& delta) const {
  return commutator(monomial(gamma), monomial(delta));
}

// ---------------------------------------------------------------------------
// Abelianization

FieldElement GradedDivisionAlgebra::canonical_class(const FieldElement& c) const {
  if (c.is_zero()) raise(ErrorCode::ZeroCoefficient, "zero has no class");
  if (field().is_finite()) {
    const std::uint64_t p = field().modulus();
    const std::uint64_t coset_count = (p - 1) / mu_e_elements_.size();
    const std::uint64_t log = (*log_table_)[c.residue()] % coset_count;
    return field().primitive_root().pow(static_cast<std::int64_t>(log));
  }
  FieldElement best = c;
  for (const auto& w : mu_e_elements_) best = std::min(best, c * w);
  return best;
}

AbelianizedUnit GradedDivisionAlgebra::abelianize(const HomogeneousUnit& u) const {
  coordinates(u.degree);
  return AbelianizedUnit{u.degree, canonical_class(u.coeff)};
}

AbelianizedUnit GradedDivisionAlgebra::combine(const AbelianizedUnit& a, const AbelianizedUnit& b) const {
  return AbelianizedUnit{a.degree + b.degree, canonical_class(a.coeff_class * b.coeff_class)};
}

AbelianizedUnit GradedDivisionAlgebra::identity_class() const { return abelianize(one()); }

}  // namespace gda
