// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <algorithm>
#include <string>
#include <vector>

#include "gda/dieudonne.hpp"
#include "gda/error.hpp"
#include "gda/oracle.hpp"
#include "gda/samples.hpp"
#include "gda/sampling.hpp"
#include "gda/sk.hpp"

using namespace gda;

namespace {

// Collects failed checks; the first few are printed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  std::size_t count() const { return count_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t count_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Checks&)> body;
};

const char* kCoefficientSamples[] = {"quat13", "twosym13", "cyc4_13", "gfield13", "quat_cyc8", "sym4_cyc8"};
const char* kAllSamples[] = {"quat13", "twosym13", "cyc4_13", "gfield13", "gfield3", "gfield5", "gfield2", "quat5",
                             "quat3", "quat_cyc8", "sym4_cyc8", "quat5_shift7", "quat5_shift10", "quat13_half",
                             "quat13_blocks", "quat_cyc8_shift7"};

// Shifted samples with their own shifts; the others unshifted at n = 2, 3, 4.
std::vector<ShiftedMatrixAlgebra> algebras_of(const AlgebraInstance& inst) {
  if (inst.shifts) return {inst.matrix_algebra()};
  std::vector<ShiftedMatrixAlgebra> out;
  for (std::size_t n : {2u, 3u, 4u}) out.push_back(ShiftedMatrixAlgebra::unshifted(inst.algebra, n));
  return out;
}

std::string label(const std::string& name, const ShiftedMatrixAlgebra& s) {
  return name + " n=" + std::to_string(s.n());
}

GradeVector zero_degree(const ShiftedMatrixAlgebra& s) { return GradeVector(s.algebra().ambient_rank(), 0); }

void bruhat_round_trip(Checks& c) {
  for (auto name : kCoefficientSamples) {
    const auto inst = load_sample(name);
    auto algebras = algebras_of(inst);
    Rng rng(1000 + c.count());
    for (int t = 0; t < 500; ++t) {
      const auto& s = algebras[t % algebras.size()];
      auto a = random_homogeneous_invertible(s, rng);
      auto f = bruhat_decompose(s, a);
      const auto where = label(name, s) + " sample " + std::to_string(t);
      c.expect(reconstruct(s, f) == a, where + ": T U P V != A");
      c.expect(f.strict && is_strict(s, f), where + ": not strict");
      c.expect(s.degree(f.T) == zero_degree(s), where + ": deg T != 0");
      c.expect(s.degree(f.V) == zero_degree(s), where + ": deg V != 0");
      c.expect(s.degree(s.monomial({f.U, f.perm})) == s.degree(a), where + ": deg U P != deg A");
    }
    for (int t = 0; t < 200; ++t) {
      const auto& s = algebras[t % algebras.size()];
      auto built = random_strict_form(s, rng);
      auto f = bruhat_decompose(s, reconstruct(s, built));
      const auto where = label(name, s) + " tuple " + std::to_string(t);
      c.expect(f.T == built.T && f.U == built.U && f.perm == built.perm && f.V == built.V,
               where + ": factors not recovered");
    }
  }
}

void det_homomorphism(Checks& c) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
    auto algebras = algebras_of(inst);
    const auto& E = *inst.algebra;
    Rng rng(2000 + c.count());
    for (int t = 0; t < 500; ++t) {
      const auto& s = algebras[t % algebras.size()];
      auto a = random_homogeneous_invertible(s, rng), b = random_homogeneous_invertible(s, rng);
      c.expect(det_E(s, s.multiply(a, b)) == E.combine(det_E(s, a), det_E(s, b)),
               label(name, s) + " pair " + std::to_string(t));
    }
    for (const auto& s : algebras) {
      const auto& r = s.epsilon_form().multiplicities;
      if (std::none_of(r.begin(), r.end(), [](std::size_t m) { return m > 1; })) continue;
      for (int t = 0; t < 50; ++t) {
        auto e = random_elementary(s, rng);
        c.expect(det_E(s, certificate_product(s, {e})) == E.identity_class(), label(name, s) + " elementary");
      }
    }
  }
}

void det_diagram(Checks& c) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
    auto algebras = algebras_of(inst);
    Rng rng(3000 + c.count());
    for (int t = 0; t < 200; ++t) {
      const auto& s = algebras[t % algebras.size()];
      auto a = random_degree0_invertible(s, rng);
      c.expect(det0_image(s, a) == det_E(s, a) && check_diagram(s, a), label(name, s));
    }
  }
}

void kernel_characterization(Checks& c) {
  for (auto name : {"gfield3", "gfield5", "quat3", "quat5"}) {
    const auto inst = load_sample(name);
    auto s = ShiftedMatrixAlgebra::unshifted(inst.algebra, 2);
    auto by_det = kernel_by_determinant(s), by_gens = kernel_by_generators(s);
    c.expect(by_det.size() > 1 && same_elements(by_det, by_gens),
             std::string(name) + ": |ker det_E| = " + std::to_string(by_det.size()) +
                 ", generated subgroup " + std::to_string(by_gens.size()));
  }
}

// A degree-0 matrix whose epsilon-form blocks are block upper triangular; the
// expected norm is the product of the determinants of the diagonal pieces.
std::pair<GradedMatrix, FieldElement> block_triangular(const ShiftedMatrixAlgebra& s, Rng& rng) {
  const auto& f = s.algebra().field();
  std::vector<FieldMatrix> blocks;
  FieldElement expected = f.one();
  for (std::size_t r : s.epsilon_form().multiplicities) {
    const std::size_t k = r > 1 ? 1 + rng() % (r - 1) : r;
    auto top = random_invertible_field_matrix(f, k, rng);
    expected *= field_determinant(top);
    FieldMatrix m(r, std::vector<FieldElement>(r, f.zero()));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = top[i][j];
    if (k < r) {
      auto bottom = random_invertible_field_matrix(f, r - k, rng);
      expected *= field_determinant(bottom);
      for (std::size_t i = 0; i < r - k; ++i)
        for (std::size_t j = 0; j < r - k; ++j) m[k + i][k + j] = bottom[i][j];
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k; j < r; ++j) m[i][j] = random_field_element(f, rng);
    }
    blocks.push_back(std::move(m));
  }
  return {s.block_assemble(blocks), expected};
}

void nrd_laws(Checks& c) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
    auto algebras = algebras_of(inst);
    const auto s_index = static_cast<std::int64_t>(inst.algebra->index());
    Rng rng(5000 + c.count());
    for (int t = 0; t < 500; ++t) {
      const auto& s = algebras[t % algebras.size()];
      auto a = random_degree0_invertible(s, rng), b = random_degree0_invertible(s, rng);
      c.expect(nrd_S(s, s.multiply(a, b)) == nrd_S(s, a) * nrd_S(s, b), label(name, s) + ": multiplicativity");
      c.expect(nrd_S(s, a) == nrd_S0(s, a).pow(s_index), label(name, s) + ": nrd_S = nrd_S0^s");
      auto [m, expected] = block_triangular(s, rng);
      c.expect(nrd_S0(s, m) == expected, label(name, s) + ": block triangular");
    }
  }
}

void degree_confinement(Checks& c) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
    auto algebras = algebras_of(inst);
    Rng rng(6000 + c.count());
    int found = 0;
    for (int t = 0; found < 200 && t < 4000; ++t) {
      const auto& s = algebras[t % algebras.size()];
      auto a = random_homogeneous_invertible(s, rng);
      if (s.degree(a) == zero_degree(s)) continue;
      ++found;
      c.expect(!in_Sh1(s, a), label(name, s) + ": nonzero degree unit in S_h^(1)");
    }
    c.expect(found == 200, std::string(name) + ": too few nonzero-degree samples");
  }
}

std::string orders(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  return a.to_string() + " vs " + b.to_string();
}

void sk_closed_forms(Checks& c) {
  const auto quat = load_sample("quat13"), two = load_sample("twosym13");
  for (auto [inst, order] : {std::pair{&quat, 1}, std::pair{&two, 2}}) {
    auto formula = sk_E(*inst->algebra).group;
    auto oracle = sk_oracle(ShiftedMatrixAlgebra::unshifted(inst->algebra, 1)).group;
    c.expect(formula == oracle && formula.order() == order, inst->name + " SK(E): " + orders(formula, oracle));
  }
  for (std::size_t n : {2u, 3u}) {
    for (const auto* inst : {&quat, &two}) {
      auto formula = sk_h_unshifted(*inst->algebra, n).group;
      auto oracle = sk_oracle(ShiftedMatrixAlgebra::unshifted(inst->algebra, n)).group;
      c.expect(formula == oracle, inst->name + " n=" + std::to_string(n) + ": " + orders(formula, oracle));
    }
    auto two_order = sk_h_unshifted(*two.algebra, n).group.order();
    c.expect(two_order == (n == 2 ? 4 : 2), "twosym13 n=" + std::to_string(n) + " order " + two_order.get_str());
  }
  c.expect(sk_h_unshifted(*two.algebra, 2).group.order() != sk_E(*two.algebra).group.order(),
           "SK^h(M_2(E)) equals SK(E)");
}

void shifted_examples(Checks& c) {
  for (auto [name, order] : {std::pair{"quat5_shift7", 4}, std::pair{"quat5_shift10", 16}}) {
    const auto inst = load_sample(name);
    auto s = inst.matrix_algebra();
    auto formula = sk_h_shifted(*inst.algebra, s.n(), s.shifts()[1]).group;
    auto oracle = sk_oracle(s).group;
    c.expect(formula == oracle && formula.order() == order, std::string(name) + ": " + orders(formula, oracle));
    c.expect(s.gamma_s_star().lattice == inst.algebra->gamma_e(), std::string(name) + ": Gamma_S^* != Gamma_E");
  }
  const auto cyc = load_sample("quat_cyc8_shift7");
  auto s = cyc.matrix_algebra();
  auto g = sk_h_shifted(*cyc.algebra, s.n(), s.shifts()[1]);
  c.expect(!g.finite && std::find(g.flags.begin(), g.flags.end(), "InfiniteT0Star") != g.flags.end(),
           "quat_cyc8_shift7: expected a structural result");
}

void periodicity(Checks& c) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
    const auto& E = *inst.algebra;
    for (std::size_t n = 1; n <= 6; ++n) {
      auto a = kernel_group(E, n), b = kernel_group(E, n + E.exponent());
      c.expect(a.group == b.group && a.components["lambda_mod_n"] == b.components["lambda_mod_n"],
               std::string(name) + " n=" + std::to_string(n));
    }
  }
  // Instances whose oracle finishes within the limit; GL_3(5) alone takes longer.
  for (auto [name, n] : {std::pair{"quat13", 3u}, std::pair{"twosym13", 3u}, std::pair{"cyc4_13", 3u},
                         std::pair{"quat3", 3u}, std::pair{"gfield3", 2u}, std::pair{"gfield3", 3u},
                         std::pair{"gfield5", 2u}, std::pair{"gfield13", 3u}}) {
    const auto inst = load_sample(name);
    c.expect(std::gcd<std::uint64_t>(n, inst.algebra->exponent()) == 1, std::string(name) + ": gcd != 1");
    auto one = sk_oracle(ShiftedMatrixAlgebra::unshifted(inst.algebra, 1)).group;
    auto big = sk_oracle(ShiftedMatrixAlgebra::unshifted(inst.algebra, n)).group;
    c.expect(one == big, std::string(name) + " n=" + std::to_string(n) + ": " + orders(big, one));
  }
}

void xi_eta(Checks& c) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
    if (!inst.algebra->field().is_finite()) continue;
    for (const auto& s : algebras_of(inst)) {
      if (s.exceptional_f2()) continue;
      for (const auto& z : inst.algebra->mu_s().elements())
        c.expect(xi(s, eta(s, z)) == z, label(name, s));
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Bruhat round trip and uniqueness", 10, bruhat_round_trip},
      {2, "det_E homomorphism, elementary matrices in the kernel", 10, det_homomorphism},
      {3, "det0 and det_E diagram", 5, det_diagram},
      {4, "kernel of det_E on S_0^* over GF(3), GF(5)", 60, kernel_characterization},
      {5, "reduced norm laws", 5, nrd_laws},
      {6, "degree confinement of S_h^(1)", 2, degree_confinement},
      {7, "SK closed forms against the oracle", 120, sk_closed_forms},
      {8, "shifted SK^h against the oracle", 60, shifted_examples},
      {9, "periodicity and gcd(n, e) = 1", 10, periodicity},
      {10, "xi(eta(z)) = z on mu_s", 2, xi_eta},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(checks);
    } catch (const Error& e) {
      error = std::string(error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < cr.limit_seconds;
    const bool ok = error.empty() && checks.failed() == 0 && checks.count() > 0 && in_time;
    if (!ok) ++failed;
    std::printf("criterion %2d %s  %-55s %zu checks, %zu failed, %.2fs (limit %.0fs)\n", cr.id, ok ? "PASS" : "FAIL",
                cr.title.c_str(), checks.count(), checks.failed(), seconds, cr.limit_seconds);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    for (const auto& f : checks.failures()) std::printf("    %s\n", f.c_str());
    if (!in_time) std::printf("    exceeded the time limit\n");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
