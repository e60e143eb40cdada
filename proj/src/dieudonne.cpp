#include "gda/dieudonne.hpp"

#include <algorithm>

#include "gda/error.hpp"

namespace gda {

DetValue delta_monomial(const ShiftedMatrixAlgebra& s, const MonomialMatrix& m) {
  const auto& E = s.algebra();
  if (!s.homogeneity(s.monomial(m)).homogeneous()) raise(ErrorCode::NotHomogeneous, "monomial matrix is not homogeneous");
  HomogeneousUnit prod = E.one();
  for (const auto& u : m.diag) prod = E.multiply(prod, u);
  if (m.perm.sign() < 0) prod.coeff = -prod.coeff;
  return E.abelianize(prod);
}

FieldElement det0(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  FieldElement d = s.algebra().field().one();
  std::size_t l = 0;
  for (const auto& block : s.block_decompose(a)) {
    FieldElement b = field_determinant(block);
    if (b.is_zero()) raise(ErrorCode::Singular, "block " + std::to_string(l + 1) + " of S_0 is singular");
    d *= b;
    ++l;
  }
  return d;
}

DetValue det0_image(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  const auto& E = s.algebra();
  return E.abelianize(HomogeneousUnit{det0(s, a), GradeVector(E.ambient_rank(), 0)});
}

DetValue det_E(const ShiftedMatrixAlgebra& s, const BruhatForm& form) {
  return delta_monomial(s, MonomialMatrix{form.U, form.perm});
}

DetValue det_E(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) { return det_E(s, bruhat_decompose(s, a)); }

std::vector<DetValue> det_E_batch_serial(const ShiftedMatrixAlgebra& s, const std::vector<GradedMatrix>& as) {
  std::vector<DetValue> out;
  out.reserve(as.size());
  for (const auto& a : as) out.push_back(det_E(s, a));
  return out;
}

std::vector<DetValue> det_E_batch(const ShiftedMatrixAlgebra& s, const std::vector<GradedMatrix>& as) {
  std::vector<std::optional<DetValue>> slots(as.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(as.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = det_E(s, as[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(gda_det_batch)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<DetValue> out;
  out.reserve(as.size());
  for (auto& v : slots) out.push_back(std::move(*v));
  return out;
}

namespace {

struct RowOp {
  std::size_t target;
  std::size_t source;
  FieldElement x;  // row_target += x row_source
};

// Reduces an invertible block to diag(1, ..., 1, det) by row transvections only.
std::vector<RowOp> reduce_block(FieldMatrix b) {
  const std::size_t r = b.size();
  std::vector<RowOp> ops;
  auto apply = [&](std::size_t t, std::size_t src, const FieldElement& x) {
    if (x.is_zero()) return;
    for (std::size_t c = 0; c < r; ++c) b[t][c] += x * b[src][c];
    ops.push_back({t, src, x});
  };
  const auto& f = b[0][0].field();
  for (std::size_t c = 0; c + 1 < r; ++c) {
    auto nonzero_below = [&]() -> std::size_t {
      for (std::size_t i = c + 1; i < r; ++i)
        if (!b[i][c].is_zero()) return i;
      return r;
    };
    if (b[c][c].is_zero()) {
      std::size_t i = nonzero_below();
      if (i == r) raise(ErrorCode::Singular, "block is singular");
      apply(c, i, f.one());
    }
    if (nonzero_below() == r) apply(c + 1, c, f.one());
    if (!b[c][c].is_one()) {
      std::size_t i = nonzero_below();
      apply(c, i, (f.one() - b[c][c]) / b[i][c]);
    }
    for (std::size_t k = 0; k < r; ++k)
      if (k != c) apply(k, c, -b[k][c]);
  }
  const std::size_t last = r - 1;
  if (b[last][last].is_zero()) raise(ErrorCode::Singular, "block is singular");
  for (std::size_t k = 0; k < last; ++k) apply(k, last, -b[k][last] / b[last][last]);
  return ops;
}

}  // namespace

KernelResult in_kernel(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  const auto& E = s.algebra();
  KernelResult result{false, det_E(s, a), std::nullopt};
  result.in_kernel = result.det == E.identity_class();
  if (!result.in_kernel) return result;

  // det_E(A) = 1 forces deg A = 0, so A is block diagonal in the epsilon-form.
  const auto& eps = s.epsilon_form();
  const Permutation back = eps.perm.inverse();
  KernelWitness w;
  std::vector<FieldMatrix> d_blocks;
  auto blocks = s.block_decompose(a);
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    const std::size_t r = blocks[l].size(), start = eps.block_start[l];
    FieldElement c = field_determinant(blocks[l]);
    // L B = diag(1..1, c) with L = op_k ... op_1, so B = op_1^{-1} ... op_k^{-1} diag(1..1, c).
    auto ops = reduce_block(blocks[l]);
    for (const auto& op : ops) {
      const std::size_t i = back(start + op.target), j = back(start + op.source);
      // e_{ab}(x) in the epsilon-form is e_ij(u_i x u_j^{-1}) in the original coordinates.
      HomogeneousUnit y = E.multiply(E.multiply(E.monomial(eps.translations[i]), HomogeneousUnit{-op.x, GradeVector(E.ambient_rank(), 0)}),
                                     E.invert_homogeneous(E.monomial(eps.translations[j])));
      w.factors.push_back({i, j, y});
    }
    FieldMatrix d(r, std::vector<FieldElement>(r, E.field().zero()));
    for (std::size_t i = 0; i < r; ++i) d[i][i] = E.field().one();
    d[r - 1][r - 1] = c;
    d_blocks.push_back(std::move(d));
    w.block_scalars.push_back(c);
  }
  w.D = s.block_assemble(d_blocks);
  result.witness = std::move(w);
  return result;
}

GradedMatrix witness_product(const ShiftedMatrixAlgebra& s, const KernelWitness& w) {
  return s.multiply(certificate_product(s, w.factors), w.D);
}

bool check_diagram(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) { return det0_image(s, a) == det_E(s, a); }

AlgebraElement commutative_determinant(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  const auto& E = s.algebra();
  if (!E.is_graded_field()) raise(ErrorCode::ValidationError, "the ordinary determinant needs a commutative E");
  std::vector<std::size_t> p(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) p[i] = i;
  AlgebraElement total;
  do {
    AlgebraElement term(E.one());
    for (std::size_t i = 0; i < s.n() && !term.is_zero(); ++i) term = E.multiply(term, a.at(i, p[i]));
    if (Permutation(p).sign() < 0) term = -term;
    total = total + term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace gda
