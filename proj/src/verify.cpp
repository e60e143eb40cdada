#include "gda/verify.hpp"

#include <functional>
#include <numeric>

#include "gda/dieudonne.hpp"
#include "gda/error.hpp"
#include "gda/oracle.hpp"
#include "gda/sampling.hpp"
#include "gda/sk.hpp"

namespace gda {

namespace {

constexpr std::size_t kMaxMessages = 20;

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    if (r_.messages.size() < kMaxMessages) r_.messages.push_back(what);
  }
  void skip() { ++r_.skipped; }

  // Runs f; a gda::Error counts as one failed check.
  void guarded(const std::string& context, const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      check(false, context + ": " + std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }

 private:
  SuiteResult& r_;
};

std::vector<ShiftedMatrixAlgebra> matrix_algebras(const AlgebraInstance& inst) {
  if (inst.shifts) return {inst.matrix_algebra()};
  return {inst.matrix_algebra(2), inst.matrix_algebra(3)};
}

std::string label(const AlgebraInstance& inst, const ShiftedMatrixAlgebra& s) {
  return inst.name + " n=" + std::to_string(s.n());
}

bool has_elementary(const ShiftedMatrixAlgebra& s) {
  for (std::size_t r : s.epsilon_form().multiplicities)
    if (r >= 2) return true;
  return false;
}

bool is_exceptional(const GradedDivisionAlgebra& e, std::size_t n) {
  return n == 2 && e.field().is_finite() && e.field().modulus() == 2;
}

bool arithmetic_shifts_of(const std::vector<GradeVector>& shifts) {
  return shifts.size() >= 2 && arithmetic_shifts(shifts[1], shifts.size()) == shifts;
}

void suite_bruhat(Recorder& rec, const std::vector<AlgebraInstance>& algebras, const VerifyOptions& opt, Rng& rng) {
  for (const auto& inst : algebras)
    for (const auto& s : matrix_algebras(inst)) {
      const std::string ctx = label(inst, s);
      const auto& E = s.algebra();
      const GradeVector zero(E.ambient_rank(), 0);
      rec.guarded(ctx, [&] {
        for (std::size_t t = 0; t < opt.samples; ++t) {
          auto a = random_homogeneous_invertible(s, rng);
          auto f = bruhat_decompose(s, a);
          rec.check(reconstruct(s, f) == a, ctx + ": T U P V does not reconstruct A");
          rec.check(f.strict && is_strict(s, f), ctx + ": form is not strict");
          rec.check(certificate_product(s, f.certificate) == f.T, ctx + ": certificate does not multiply to T");
          rec.check(s.degree(f.T) == zero && s.degree(f.V) == zero, ctx + ": T or V not of degree 0");
          rec.check(s.degree(s.monomial({f.U, f.perm})) == s.degree(a), ctx + ": deg(U P) != deg(A)");
        }
        for (std::size_t t = 0; t < opt.samples; ++t) {
          auto built = random_strict_form(s, rng);
          auto f = bruhat_decompose(s, reconstruct(s, built));
          rec.check(f.T == built.T && f.U == built.U && f.perm == built.perm && f.V == built.V,
                    ctx + ": strict tuple not recovered");
        }
      });
    }
}

void suite_det(Recorder& rec, const std::vector<AlgebraInstance>& algebras, const VerifyOptions& opt, Rng& rng) {
  for (const auto& inst : algebras)
    for (const auto& s : matrix_algebras(inst)) {
      const std::string ctx = label(inst, s);
      const auto& E = s.algebra();
      rec.guarded(ctx, [&] {
        for (std::size_t t = 0; t < opt.samples; ++t) {
          auto a = random_homogeneous_invertible(s, rng), b = random_homogeneous_invertible(s, rng);
          rec.check(det_E(s, s.multiply(a, b)) == E.combine(det_E(s, a), det_E(s, b)), ctx + ": det_E not multiplicative");
          rec.check(check_diagram(s, random_degree0_invertible(s, rng)), ctx + ": det0 and det_E disagree");
          if (E.is_graded_field()) {
            auto d = commutative_determinant(s, a).as_homogeneous();
            rec.check(d && det_E(s, a) == E.abelianize(*d), ctx + ": det_E differs from the Leibniz determinant");
          }
        }
        if (!has_elementary(s)) return rec.skip();
        for (std::size_t t = 0; t < opt.samples; ++t) {
          auto f = random_elementary(s, rng);
          rec.check(det_E(s, s.elementary(f.i, f.j, AlgebraElement(f.x))) == E.identity_class(),
                    ctx + ": det_E(e_ij(x)) != 1");
        }
      });
    }
}

void suite_kernel(Recorder& rec, const std::vector<AlgebraInstance>& algebras, const VerifyOptions& opt, Rng& rng) {
  OracleOptions oo;
  oo.budget = opt.budget;
  for (const auto& inst : algebras)
    for (const auto& s : matrix_algebras(inst)) {
      const std::string ctx = label(inst, s);
      const auto& E = s.algebra();
      rec.guarded(ctx, [&] {
        for (std::size_t t = 0; t < opt.samples; ++t) {
          auto a = random_degree0_invertible(s, rng);
          auto r = in_kernel(s, a);
          rec.check(r.in_kernel == (det_E(s, a) == E.identity_class()), ctx + ": in_kernel disagrees with det_E");
          if (r.in_kernel) rec.check(witness_product(s, *r.witness) == a, ctx + ": kernel witness does not reconstruct");
        }
        if (has_elementary(s)) {
          std::vector<ElementaryFactor> fs;
          for (std::size_t t = 0; t < 6; ++t) fs.push_back(random_elementary(s, rng));
          auto b = certificate_product(s, fs);
          auto r = in_kernel(s, b);
          rec.check(r.in_kernel && witness_product(s, *r.witness) == b, ctx + ": elementary product not certified");
        }
        const auto& f = E.field();
        if (!f.is_finite() || f.modulus() > 5 || s.n() != 2) return rec.skip();
        auto by_det = kernel_by_determinant(s, oo);
        rec.check(same_elements(by_det, kernel_by_generators(s, oo)), ctx + ": ker det_E != <El_h> D");
        if (E.is_graded_field() && !s.exceptional_f2())
          rec.check(same_elements(by_det, commutator_subgroup_Sh(s, oo)), ctx + ": ker det_E != [S_h^*, S_h^*]");
      });
    }
}

void suite_nrd(Recorder& rec, const std::vector<AlgebraInstance>& algebras, const VerifyOptions& opt, Rng& rng) {
  for (const auto& inst : algebras)
    for (const auto& s : matrix_algebras(inst)) {
      const std::string ctx = label(inst, s);
      const auto& E = s.algebra();
      const auto sidx = static_cast<std::int64_t>(E.index());
      rec.guarded(ctx, [&] {
        for (std::size_t t = 0; t < opt.samples; ++t) {
          auto a = random_degree0_invertible(s, rng), b = random_degree0_invertible(s, rng);
          rec.check(nrd_S(s, s.multiply(a, b)) == nrd_S(s, a) * nrd_S(s, b), ctx + ": nrd_S not multiplicative");
          rec.check(nrd_S(s, a) == nrd_S0(s, a).pow(sidx), ctx + ": nrd_S != nrd_S0^s");
          auto c = s.multiply(s.multiply(a, b), s.multiply(s.invert(a), s.invert(b)));
          rec.check(nrd_S(s, c).is_one(), ctx + ": commutator has nrd != 1");
          auto h = random_homogeneous_invertible(s, rng);
          if (!is_zero(s.degree(h))) rec.check(!in_Sh1(s, h), ctx + ": nonzero degree matrix in S_h^(1)");
        }
        if (!inst.shifts) {
          const auto& f = E.field();
          const std::size_t n = s.n();
          for (std::size_t t = 0; t < opt.samples; ++t) {
            // Upper block triangular with diagonal blocks of sizes 1 and n - 1.
            auto b1 = random_invertible_field_matrix(f, 1, rng), b2 = random_invertible_field_matrix(f, n - 1, rng);
            FieldMatrix m(n, std::vector<FieldElement>(n, f.zero()));
            m[0][0] = b1[0][0];
            for (std::size_t j = 1; j < n; ++j) m[0][j] = random_field_element(f, rng);
            for (std::size_t i = 1; i < n; ++i)
              for (std::size_t j = 1; j < n; ++j) m[i][j] = b2[i - 1][j - 1];
            rec.check(nrd_S0(s, s.block_assemble({m})) == field_determinant(b1) * field_determinant(b2),
                      ctx + ": block triangular nrd is not the product of the diagonal blocks");
          }
        }
        if (s.exceptional_f2()) return rec.skip();
        for (const auto& c : E.mu_s().elements()) rec.check(xi(s, eta(s, c)) == c, ctx + ": xi(eta(c)) != c");
      });
    }
}

void suite_sk(Recorder& rec, const std::vector<AlgebraInstance>& algebras, const VerifyOptions& opt) {
  OracleOptions oo;
  oo.budget = opt.budget;
  for (const auto& inst : algebras) {
    const auto& E = *inst.algebra;
    const std::string ctx = inst.name;
    rec.guarded(ctx, [&] {
      auto expect = [&](const std::string& key, const Integer& got) {
        if (auto it = inst.expect.find(key); it != inst.expect.end())
          rec.check(got == Integer(static_cast<long>(it->second)), ctx + ": expected " + key + " = " +
                                                                       std::to_string(it->second) + ", got " + got.get_str());
      };
      expect("index", Integer(static_cast<unsigned long>(E.index())));
      expect("exponent", Integer(static_cast<unsigned long>(E.exponent())));
      expect("sk_order", sk_E(E).group.order());
      if (!is_exceptional(E, 2)) expect("skh_order_n2", sk_h_unshifted(E, 2).group.order());
      expect("skh_order_n3", sk_h_unshifted(E, 3).group.order());

      const bool finite = E.field().is_finite();
      if (finite) {
        auto o = sk_oracle(ShiftedMatrixAlgebra::unshifted(inst.algebra, 1), oo);
        rec.check(o.group == sk_E(E).group, ctx + ": sk_oracle(n=1) != sk_E");
        for (std::size_t n : {2u, 3u}) {
          if (is_exceptional(E, n)) {
            rec.skip();
            continue;
          }
          auto g = sk_oracle(ShiftedMatrixAlgebra::unshifted(inst.algebra, n), oo);
          rec.check(g.group == sk_h_unshifted(E, n).group, ctx + ": sk_oracle != sk_h_unshifted at n=" + std::to_string(n));
          rec.check(g.components["commutators_in_Sh1"].get<bool>(), ctx + ": commutator outside S_h^(1)");
          rec.check(g.components["eta_surjective"].get<bool>(), ctx + ": eta not surjective");
        }
      }
      if (!inst.shifts) return;
      auto s = inst.matrix_algebra();
      const auto& shifts = *inst.shifts;
      const std::size_t n = shifts.size();
      std::optional<GroupDescription> formula;
      if (arithmetic_shifts_of(shifts)) {
        auto m = coset_order(shifts[1], E.gamma_e());
        if (m) expect("coset_order", *m);
        if (!m || *m > Integer(static_cast<unsigned long>(3 * n))) {
          formula = sk_h_shifted(E, n, shifts[1]);
          rec.check(s.gamma_s_star().lattice == E.gamma_e(), ctx + ": Gamma_S^* != Gamma_E");
          if (formula->finite) {
            expect("skh_order", formula->group.order());
          } else {
            rec.check(formula->flags == std::vector<std::string>{"InfiniteT0Star"}, ctx + ": structural flag missing");
          }
        }
      }
      if (!finite) return;
      auto o = sk_oracle(s, oo);
      rec.check(o.components["commutators_in_Sh1"].get<bool>(), ctx + ": commutator outside S_h^(1)");
      rec.check(o.components["index_consistent"].get<bool>(), ctx + ": coset count inconsistent");
      if (formula) rec.check(o.group == formula->group, ctx + ": sk_oracle != sk_h_shifted");
    });
  }
}

void suite_exactseq(Recorder& rec, const std::vector<AlgebraInstance>& algebras, const VerifyOptions& opt) {
  OracleOptions oo;
  oo.budget = opt.budget;
  for (const auto& inst : algebras) {
    const auto& E = *inst.algebra;
    const std::string ctx = inst.name;
    const std::uint64_t e = E.exponent();
    rec.guarded(ctx, [&] {
      for (std::size_t n = 1; n <= 6; ++n) {
        const std::string c = ctx + " n=" + std::to_string(n);
        auto k = kernel_group(E, n), k2 = kernel_group(E, n + e);
        rec.check(k.group == k2.group && k.components["lambda_mod_n"] == k2.components["lambda_mod_n"],
                  c + ": kernel_group(n) != kernel_group(n + e)");
        const Integer lam(static_cast<long>(k.components["lambda_mod_n"]["order"].get<std::int64_t>()));
        rec.check(lam % k.group.order() == 0, c + ": kernel order does not divide |Lambda/n Lambda|");
        if (is_exceptional(E, n)) {
          rec.skip();
          continue;
        }
        auto h = sk_h_unshifted(E, n);
        auto sk = sk_E(E);
        rec.check(h.group.order() == k.group.order() * sk.group.order(), c + ": |SK^h| != |kernel| |SK(E)|");
        if (std::gcd(n, e) == 1) rec.check(h.group == sk.group, c + ": gcd(n,e) = 1 but SK^h != SK(E)");
        if (std::gcd(n, e) == 1 && E.field().is_finite() && n <= 3)
          rec.check(sk_oracle(ShiftedMatrixAlgebra::unshifted(inst.algebra, n), oo).group.order() == sk_oracle(ShiftedMatrixAlgebra::unshifted(inst.algebra, 1), oo).group.order(),
                    c + ": gcd(n,e) = 1 but oracle orders differ");
      }
    });
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bruhat", "det", "kernel", "nrd", "sk", "exactseq"};
  return names;
}

std::vector<SuiteResult> run_suites(const std::string& suite, const std::vector<AlgebraInstance>& algebras,
                                    const VerifyOptions& opt) {
  std::vector<std::string> chosen;
  if (suite == "all") {
    chosen = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
    chosen = {suite};
  } else {
    raise(ErrorCode::ValidationError, "unknown suite '" + suite + "'");
  }
  std::vector<SuiteResult> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    SuiteResult r;
    r.name = chosen[i];
    Recorder rec(r);
    // Each suite gets its own stream so results do not depend on which suites run.
    const auto pos = static_cast<std::uint64_t>(std::find(suite_names().begin(), suite_names().end(), chosen[i]) - suite_names().begin());
    Rng rng(opt.seed * 1000003ULL + pos);
    if (r.name == "bruhat") suite_bruhat(rec, algebras, opt, rng);
    if (r.name == "det") suite_det(rec, algebras, opt, rng);
    if (r.name == "kernel") suite_kernel(rec, algebras, opt, rng);
    if (r.name == "nrd") suite_nrd(rec, algebras, opt, rng);
    if (r.name == "sk") suite_sk(rec, algebras, opt);
    if (r.name == "exactseq") suite_exactseq(rec, algebras, opt);
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.name;
  j["passed"] = r.passed();
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  j["skipped"] = r.skipped;
  j["messages"] = r.messages;
  return j;
}

}  // namespace gda
