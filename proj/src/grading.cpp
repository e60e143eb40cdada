#include "gda/grading.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>
#include <utility>

#include "gda/error.hpp"

namespace gda {

GradeVector operator+(const GradeVector& a, const GradeVector& b) {
  assert(a.size() == b.size());
  GradeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

GradeVector operator-(const GradeVector& a, const GradeVector& b) {
  assert(a.size() == b.size());
  GradeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

GradeVector operator-(const GradeVector& a) {
  GradeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

GradeVector scale(std::int64_t m, const GradeVector& v) {
  GradeVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = m * v[i];
  return r;
}

bool is_zero(const GradeVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::string to_string(const GradeVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) raise(ErrorCode::ValidationError, "integer out of 64-bit range: " + z.get_str());
  return z.get_si();
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  IntMatrix r(a.size(), std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

Integer determinant(IntMatrix m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row[dst] += q * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += q * m[src][j];
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (auto& row : m) row[dst] += q * row[src];
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t rows = input.size();
  const std::size_t cols = rows ? input[0].size() : 0;
  SmithForm f{identity_matrix(rows), input, identity_matrix(cols)};
  IntMatrix& a = f.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second])))
          best = {i, j};
    if (!best) break;
    swap_rows(a, t, best->first);
    swap_rows(f.U, t, best->first);
    swap_cols(a, t, best->second);
    swap_cols(f.V, t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        add_row(a, i, t, -q);
        add_row(f.U, i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        add_col(a, j, t, -q);
        add_col(f.V, j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // A remainder survived; move the smallest one into the pivot slot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < rows; ++i)
          if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t; j < cols; ++j)
          if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
        swap_rows(a, t, bi);
        swap_rows(f.U, t, bi);
        swap_cols(a, t, bj);
        swap_cols(f.V, t, bj);
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      add_row(a, t, *bad_row, 1);
      add_row(f.U, t, *bad_row, 1);
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : f.U[t]) x = -x;
    }
  }
  return f;
}

IntMatrix hermite_normal_form(IntMatrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    // Euclid down the column until a single nonzero entry remains at row r.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][c] != 0 && (!best || abs(m[i][c]) < abs(m[*best][c]))) best = i;
      if (!best) break;
      std::swap(m[r], m[*best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        add_row(m, i, r, -q);
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= m.size() || m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q != 0) add_row(m, i, r, -q);
    }
    ++r;
  }
  m.resize(r);
  return m;
}

namespace {

IntMatrix to_int_matrix(const std::vector<GradeVector>& gens) {
  IntMatrix m;
  m.reserve(gens.size());
  for (const auto& g : gens) {
    std::vector<Integer> row;
    row.reserve(g.size());
    for (auto x : g) row.emplace_back(static_cast<long>(x));
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

Lattice::Lattice(std::size_t ambient_rank, const std::vector<GradeVector>& generators)
    : Lattice(ambient_rank, to_int_matrix(generators)) {}

Lattice::Lattice(std::size_t ambient_rank, IntMatrix generators) : ambient_rank_(ambient_rank) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank)
      raise(ErrorCode::ValidationError, "lattice generator has wrong length");
  basis_ = hermite_normal_form(std::move(generators));
  for (const auto& row : basis_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    pivots_.push_back(p);
  }
}

Lattice Lattice::whole(std::size_t ambient_rank) { return Lattice(ambient_rank, identity_matrix(ambient_rank)); }

Lattice Lattice::zero(std::size_t ambient_rank) { return Lattice(ambient_rank, IntMatrix{}); }

std::optional<std::vector<mpq_class>> Lattice::rational_coordinates(const GradeVector& v) const {
  if (v.size() != ambient_rank_) raise(ErrorCode::ValidationError, "vector has wrong length");
  std::vector<mpq_class> x(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    mpq_class acc(static_cast<long>(v[pivots_[i]]));
    for (std::size_t j = 0; j < i; ++j) acc -= x[j] * mpq_class(basis_[j][pivots_[i]]);
    x[i] = acc / mpq_class(basis_[i][pivots_[i]]);
    x[i].canonicalize();
  }
  for (std::size_t c = 0; c < ambient_rank_; ++c) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < rank(); ++i) acc += x[i] * mpq_class(basis_[i][c]);
    if (acc != static_cast<long>(v[c])) return std::nullopt;
  }
  return x;
}

std::optional<std::vector<Integer>> Lattice::coordinates(const GradeVector& v) const {
  auto q = rational_coordinates(v);
  if (!q) return std::nullopt;
  std::vector<Integer> out;
  out.reserve(q->size());
  for (const auto& x : *q) {
    if (x.get_den() != 1) return std::nullopt;
    out.push_back(x.get_num());
  }
  return out;
}

bool Lattice::contains(const GradeVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.ambient_rank_ != ambient_rank_) return false;
  for (const auto& g : other.basis_vectors())
    if (!contains(g)) return false;
  return true;
}

GradeVector Lattice::reduce(const GradeVector& v) const {
  std::vector<Integer> w;
  for (auto x : v) w.emplace_back(static_cast<long>(x));
  for (std::size_t i = 0; i < rank(); ++i) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), w[pivots_[i]].get_mpz_t(), basis_[i][pivots_[i]].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t c = 0; c < ambient_rank_; ++c) w[c] -= q * basis_[i][c];
  }
  GradeVector out;
  for (const auto& x : w) out.push_back(to_int64(x));
  return out;
}

Lattice Lattice::operator+(const Lattice& other) const {
  IntMatrix gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return Lattice(ambient_rank_, std::move(gens));
}

std::vector<GradeVector> Lattice::basis_vectors() const {
  std::vector<GradeVector> out;
  for (const auto& row : basis_) {
    GradeVector g;
    for (const auto& x : row) g.push_back(to_int64(x));
    out.push_back(std::move(g));
  }
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<Integer>& orders) {
  const std::size_t n = orders.size();
  IntMatrix diag(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] <= 0) raise(ErrorCode::ValidationError, "cyclic order must be positive");
    diag[i][i] = orders[i];
  }
  FiniteAbelianGroup g;
  if (n == 0) return g;
  auto snf = smith_normal_form(diag);
  for (std::size_t i = 0; i < n; ++i)
    if (snf.D[i][i] > 1) g.factors_.push_back(snf.D[i][i]);
  return g;
}

Integer FiniteAbelianGroup::order() const {
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

Integer FiniteAbelianGroup::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x Z/" : "Z/") + factors_[i].get_str();
  return s;
}

QuotientGroup quotient(const Lattice& sup, const Lattice& sub) {
  if (!sup.contains(sub)) raise(ErrorCode::NotASubgroup, "sublattice is not contained in the lattice");
  QuotientGroup q;
  q.free_rank = sup.rank() - sub.rank();
  if (sub.rank() == 0) return q;
  IntMatrix coords;
  for (const auto& g : sub.basis_vectors()) coords.push_back(*sup.coordinates(g));
  auto snf = smith_normal_form(coords);
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < sub.rank(); ++i) orders.push_back(snf.D[i][i]);
  q.torsion = FiniteAbelianGroup::from_cyclic_orders(orders);
  return q;
}

FiniteAbelianGroup exterior_square(const FiniteAbelianGroup& q) {
  const auto& d = q.invariant_factors();
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) orders.push_back(d[i]);
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

std::optional<Integer> coset_order(const GradeVector& v, const Lattice& lattice) {
  auto x = lattice.rational_coordinates(v);
  if (!x) return std::nullopt;
  Integer m = 1;
  for (const auto& c : *x) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), c.get_den_mpz_t());
  return m;
}

}  // namespace gda
