#include "gda/sk.hpp"

#include <numeric>

#include "gda/error.hpp"

namespace gda {

Json to_json(const GroupDescription& g) {
  Json j;
  j["finite"] = g.finite;
  if (g.finite) {
    j["group"] = to_json(g.group);
  } else {
    j["structure"] = g.structure;
  }
  j["provenance"] = g.provenance;
  j["components"] = g.components;
  j["flags"] = g.flags;
  return j;
}

NrdValue nrd_S0(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  FieldElement d = s.algebra().field().one();
  std::size_t l = 0;
  for (const auto& block : s.block_decompose(a)) {
    FieldElement b = field_determinant(block);
    ++l;
    if (b.is_zero()) raise(ErrorCode::Singular, "block " + std::to_string(l) + " of S_0 is singular");
    d *= b;
  }
  return d;
}

NrdValue nrd_S(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  return nrd_S0(s, a).pow(static_cast<std::int64_t>(s.algebra().index()));
}

bool in_Sh1(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  auto h = s.homogeneity(a);
  if (!h.homogeneous() || !is_zero(h.degree)) return false;
  return nrd_S(s, a).is_one();
}

namespace {

void refuse_exceptional(const ShiftedMatrixAlgebra& s) {
  if (s.exceptional_f2()) raise(ErrorCode::ExceptionalF2Config, "M_2(F_2) is excluded");
}

Integer gcd_int(std::uint64_t a, std::uint64_t b) { return Integer(std::gcd(a, b)); }

FiniteAbelianGroup cyclic(std::uint64_t m) { return FiniteAbelianGroup::from_cyclic_orders({Integer(m)}); }

}  // namespace

GradedMatrix eta(const ShiftedMatrixAlgebra& s, const FieldElement& c) {
  refuse_exceptional(s);
  if (c.is_zero() || !c.pow(static_cast<std::int64_t>(s.algebra().index())).is_one())
    raise(ErrorCode::ValidationError, "eta needs c in T_0 with c^s = 1");
  const auto& eps = s.epsilon_form();
  const auto& f = s.algebra().field();
  std::vector<FieldMatrix> blocks;
  for (std::size_t r : eps.multiplicities) {
    FieldMatrix b(r, std::vector<FieldElement>(r, f.zero()));
    for (std::size_t i = 0; i < r; ++i) b[i][i] = f.one();
    blocks.push_back(std::move(b));
  }
  blocks[0][0][0] = c;
  return s.block_assemble(blocks);
}

FieldElement xi(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) {
  refuse_exceptional(s);
  if (!in_Sh1(s, a)) raise(ErrorCode::ValidationError, "xi needs a matrix in S_h^(1)");
  return nrd_S0(s, a);
}

GroupDescription sk_E(const GradedDivisionAlgebra& e) {
  GroupDescription g;
  if (e.is_graded_field()) {
    g.provenance = "E is a graded field: SK(E) = 1";
    g.components["mu_s_order"] = 1;
    g.components["mu_e_order"] = 1;
    return g;
  }
  const std::uint64_t ms = e.mu_s().order, me = e.mu_e().order;
  g.group = cyclic(ms / me);
  g.provenance = "E totally ramified over T: SK(E) = mu_s(T_0)/mu_e(T_0)";
  g.components["mu_s_order"] = ms;
  g.components["mu_e_order"] = me;
  return g;
}

GroupDescription kernel_group(const GradedDivisionAlgebra& e, std::size_t n) {
  if (n == 0) raise(ErrorCode::ValidationError, "n must be positive");
  GroupDescription g;
  g.group = FiniteAbelianGroup::from_cyclic_orders({gcd_int(n, e.exponent())});
  g.provenance = "[E^*,E^*] = mu_e(T_0), so the kernel is mu_e/mu_e^n = Z/gcd(n,e)";
  std::vector<Integer> lam;
  const Integer nn(static_cast<unsigned long>(n));
  for (const auto& d : e.lambda().invariant_factors()) {
    Integer c;
    mpz_gcd(c.get_mpz_t(), d.get_mpz_t(), nn.get_mpz_t());
    lam.push_back(c);
  }
  FiniteAbelianGroup lambda_mod_n = FiniteAbelianGroup::from_cyclic_orders(lam);
  g.components["n"] = n;
  g.components["e"] = e.exponent();
  g.components["lambda"] = to_json(e.lambda());
  g.components["lambda_mod_n"] = to_json(lambda_mod_n);
  return g;
}

GroupDescription sk_h_unshifted(const GradedDivisionAlgebra& e, std::size_t n) {
  if (n == 0) raise(ErrorCode::ValidationError, "n must be positive");
  if (n == 2 && e.field().is_finite() && e.field().modulus() == 2)
    raise(ErrorCode::ExceptionalF2Config, "M_2(F_2) is excluded");
  GroupDescription kernel = kernel_group(e, n);
  GroupDescription sk = sk_E(e);
  GroupDescription g;
  // SK^h = mu_s / (mu_e)^n, cyclic; the kernel is its subgroup mu_e / mu_e^n.
  g.group = FiniteAbelianGroup::from_cyclic_orders({kernel.group.order() * sk.group.order()});
  g.provenance = e.is_graded_field()
                     ? "E is a graded field: SK^h(M_n(E)) = SK(E) = 1"
                     : "exact sequence 0 -> Z/gcd(n,e) -> SK^h(M_n(E)) -> SK(E) -> 0, SK^h = mu_s/mu_e^n";
  g.components["kernel"] = to_json(kernel.group);
  g.components["sk_E"] = to_json(sk.group);
  g.components["lambda_mod_n"] = kernel.components["lambda_mod_n"];
  return g;
}

std::vector<GradeVector> arithmetic_shifts(const GradeVector& delta, std::size_t n) {
  std::vector<GradeVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(scale(static_cast<std::int64_t>(i), delta));
  return out;
}

GroupDescription sk_h_shifted(const GradedDivisionAlgebra& e, std::size_t n, const GradeVector& delta) {
  if (n == 0) raise(ErrorCode::ValidationError, "n must be positive");
  if (delta.size() != e.ambient_rank()) raise(ErrorCode::ValidationError, "delta has the wrong length");
  auto m = coset_order(delta, e.gamma_e());
  if (m && *m <= Integer(static_cast<unsigned long>(3 * n)))
    raise(ErrorCode::OrderTooSmall, "order of delta modulo Gamma_E is " + m->get_str() + ", need more than " +
                                        std::to_string(3 * n));
  const std::uint64_t ms = e.mu_s().order, me = e.mu_e().order;
  // diag(u) -> (u_1, ..., u_{n-1}, u_1 ... u_n); omega I_n -> (omega, ..., omega, omega^n).
  const std::int64_t last_exp = static_cast<std::int64_t>(n);
  GroupDescription g;
  g.provenance = "diagonal S_0 and Gamma_S^* = Gamma_E: SK^h = ((T_0^*)^(n-1) x mu_s(T_0)) / H, H = {(w,...,w,w^n) : w in mu_e}";
  g.components["n"] = n;
  g.components["coset_order"] = m ? Json(m->get_str()) : Json("infinite");
  g.components["mu_s_order"] = ms;
  g.components["mu_e_order"] = me;
  g.components["H_last_exponent"] = last_exp;
  if (!e.field().is_finite()) {
    g.finite = false;
    g.structure = "((T_0^*)^" + std::to_string(n - 1) + " x Z/" + std::to_string(ms) + ") / H, |H| = " + std::to_string(me) +
                  ", T_0^* = " + e.field().describe() + "^* not torsion";
    g.components["T0_star_order"] = "infinite";
    g.flags.emplace_back(error_code_name(ErrorCode::InfiniteT0Star));
    return g;
  }
  const std::uint64_t q = *e.field().unit_group_order();
  g.components["T0_star_order"] = q;
  // Columns: n cyclic coordinates, T_0^* = Z/q for the first n-1 and mu_s = Z/ms for the last.
  IntMatrix rel(n + 1, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i + 1 < n; ++i) rel[i][i] = Integer(q);
  rel[n - 1][n - 1] = Integer(ms);
  for (std::size_t i = 0; i + 1 < n; ++i) rel[n][i] = Integer(q / me);
  rel[n][n - 1] = Integer(static_cast<long>(ms / me)) * Integer(static_cast<long>(last_exp));
  SmithForm snf = smith_normal_form(rel);
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < n; ++i) orders.push_back(abs(snf.D[i][i]));
  g.group = FiniteAbelianGroup::from_cyclic_orders(orders);
  return g;
}

}  // namespace gda
