#include <gtest/gtest.h>

#include "gda/error.hpp"
#include "gda/gmatrix.hpp"
#include "gda/samples.hpp"
#include "gda/sampling.hpp"

using namespace gda;

namespace {

ShiftedMatrixAlgebra with_shifts(const std::string& sample, std::vector<GradeVector> shifts) {
  auto inst = load_sample(sample);
  return ShiftedMatrixAlgebra(inst.algebra, shifts.size(), shifts);
}

AlgebraElement term(const GradedDivisionAlgebra& e, long c, GradeVector d) {
  return AlgebraElement(HomogeneousUnit{e.field().from_integer(c), std::move(d)});
}

// Brute force over S_n: lambda in Gamma_S^* iff some sigma puts every delta_i - delta_sigma(i) in one coset.
std::set<GradeVector> gamma_s_star_cosets_brute(const ShiftedMatrixAlgebra& s) {
  std::vector<std::size_t> p(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) p[i] = i;
  std::set<GradeVector> out;
  const auto& ge = s.algebra().gamma_e();
  do {
    GradeVector key = ge.reduce(s.shifts()[0] - s.shifts()[p[0]]);
    bool ok = true;
    for (std::size_t i = 1; i < s.n() && ok; ++i) ok = ge.reduce(s.shifts()[i] - s.shifts()[p[i]]) == key;
    if (ok) out.insert(key);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST(Epsilon, SpecExamples) {
  auto s = with_shifts("quat13_blocks", {{0, 0}, {1, 0}, {0, 0}});
  const auto& eps = s.epsilon_form();
  EXPECT_EQ(eps.multiplicities, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(eps.shifts, (std::vector<GradeVector>{{0, 0}, {0, 0}, {1, 0}}));
  auto u = with_shifts("quat13", {{2, 3}, {-4, 1}, {0, 0}});
  EXPECT_EQ(u.epsilon_form().multiplicities, (std::vector<std::size_t>{3}));
  EXPECT_EQ(u.epsilon_form().shifts, (std::vector<GradeVector>(3, GradeVector{2, 3})));
  auto h = load_sample("quat5_shift10").matrix_algebra();
  EXPECT_EQ(h.epsilon_form().multiplicities, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Homogeneity, SpecExamples) {
  auto s = load_sample("quat13").matrix_algebra();
  const auto& E = s.algebra();
  auto id = s.homogeneity(s.identity());
  EXPECT_TRUE(id.homogeneous());
  EXPECT_EQ(id.degree, (GradeVector{0, 0}));
  GradedMatrix m(2);
  m.at(0, 1) = term(E, 1, {1, 0});
  m.at(1, 0) = term(E, 1, {0, 1});
  EXPECT_EQ(s.homogeneity(m).kind, Homogeneity::Kind::NotHomogeneous);
  m.at(1, 0) = term(E, 3, {1, 0});
  EXPECT_EQ(s.homogeneity(m).degree, (GradeVector{1, 0}));
  EXPECT_EQ(s.homogeneity(s.scalar(E.monomial({1, 1}))).degree, (GradeVector{1, 1}));
  EXPECT_EQ(s.homogeneity(s.zero()).kind, Homogeneity::Kind::Zero);
  m.at(0, 0) = term(E, 1, {0, 0}) + term(E, 1, {1, 0});
  EXPECT_EQ(s.homogeneity(m).kind, Homogeneity::Kind::NotHomogeneous);
}

TEST(GammaSStar, SpecExamples) {
  auto u = load_sample("twosym13").matrix_algebra(3);
  EXPECT_EQ(u.gamma_s_star().lattice, u.algebra().gamma_e());
  EXPECT_EQ(u.grade_set().size(), 1u);
  for (auto name : {"quat5_shift7", "quat5_shift10"}) {
    auto s = load_sample(name).matrix_algebra();
    EXPECT_EQ(s.gamma_s_star().lattice, s.algebra().gamma_e()) << name;
  }
  auto half = load_sample("quat13_half").matrix_algebra();
  auto star = half.gamma_s_star();
  EXPECT_EQ(star.lattice, Lattice::whole(2));
  EXPECT_TRUE(star.lattice.contains(half.algebra().gamma_e()));
  EXPECT_NE(star.lattice, half.algebra().gamma_e());
}

TEST(GammaSStar, MatchesPermutationBruteForce) {
  std::vector<std::vector<GradeVector>> patterns = {
      {{0, 0}, {1, 0}}, {{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 0}, {0, 0}}, {{0, 0}, {2, 0}, {4, 0}, {1, 0}},
      {{0, 0}, {5, 0}, {3, 1}, {8, 1}}, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}};
  for (auto sample : {"quat13_half", "quat13_blocks", "quat5_shift7"})
    for (const auto& shifts : patterns) {
      auto s = with_shifts(sample, shifts);
      auto brute = gamma_s_star_cosets_brute(s);
      auto star = s.gamma_s_star();
      EXPECT_EQ(star.witnesses.size(), brute.size());
      for (const auto& [sigma, lambda] : star.witnesses) {
        EXPECT_TRUE(brute.count(s.algebra().gamma_e().reduce(lambda)));
        for (std::size_t i = 0; i < s.n(); ++i)
          EXPECT_TRUE(s.algebra().gamma_e().contains(shifts[i] - shifts[sigma(i)] - lambda));
      }
      // Gamma_E <= Gamma_S^* <= <Gamma_S>
      EXPECT_TRUE(star.lattice.contains(s.algebra().gamma_e()));
      Lattice span = s.algebra().gamma_e();
      for (const auto& g : s.grade_set()) span = span + Lattice(2, std::vector<GradeVector>{g});
      EXPECT_TRUE(span.contains(star.lattice));
    }
}

TEST(Blocks, SpecExamples) {
  Rng rng(1);
  auto u = load_sample("quat13").matrix_algebra(3);
  auto a = random_degree0_invertible(u, rng);
  auto blocks = u.block_decompose(a);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(u.block_assemble(blocks), a);
  auto h = load_sample("quat5_shift10").matrix_algebra();
  EXPECT_EQ(h.block_decompose(h.identity()).size(), 3u);
  auto b = load_sample("quat13_blocks").matrix_algebra();
  auto bl = b.block_decompose(random_degree0_invertible(b, rng));
  EXPECT_EQ(bl[0].size(), 2u);
  EXPECT_EQ(bl[1].size(), 1u);
  try {
    u.block_decompose(u.scalar(u.algebra().monomial({1, 0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDegreeZero);
  }
}

TEST(Blocks, RingIsomorphismOnS0) {
  Rng rng(2);
  for (auto name : {"quat13_blocks", "quat5_shift10", "quat13"}) {
    auto s = load_sample(name).matrix_algebra();
    for (int t = 0; t < 30; ++t) {
      auto a = random_degree0_invertible(s, rng), b = random_degree0_invertible(s, rng);
      auto ba = s.block_decompose(a), bb = s.block_decompose(b);
      auto prod = s.block_decompose(s.multiply(a, b));
      auto sum = s.block_decompose(s.add(a, b));
      for (std::size_t l = 0; l < ba.size(); ++l) {
        const std::size_t r = ba[l].size();
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) {
            FieldElement p = s.algebra().field().zero();
            for (std::size_t k = 0; k < r; ++k) p += ba[l][i][k] * bb[l][k][j];
            ASSERT_EQ(prod[l][i][j], p);
            ASSERT_EQ(sum[l][i][j], ba[l][i][j] + bb[l][i][j]);
          }
      }
    }
  }
}

TEST(Elementary, SpecExamples) {
  auto u = load_sample("quat13").matrix_algebra(2);
  const auto& E = u.algebra();
  auto e = u.elementary(0, 1, term(E, 5, {0, 0}));
  EXPECT_EQ(u.homogeneity(e).degree, (GradeVector{0, 0}));
  EXPECT_EQ(u.elementary(0, 1, AlgebraElement()), u.identity());
  EXPECT_THROW(u.elementary(1, 1, term(E, 1, {0, 0})), Error);
  auto h = load_sample("quat5_shift7").matrix_algebra();
  for (long c = 1; c < 5; ++c)
    for (auto d : std::vector<GradeVector>{{0, 0}, {7, 0}, {-7, 0}, {0, 1}}) {
      try {
        h.elementary(0, 1, term(h.algebra(), c, d));
        FAIL();
      } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::WrongDegree);
      }
    }
}

TEST(Elementary, AdditiveInTheEntry) {
  Rng rng(3);
  auto s = load_sample("quat13_blocks").matrix_algebra();
  for (int t = 0; t < 50; ++t) {
    auto f = random_elementary(s, rng);
    HomogeneousUnit y{random_nonzero(s.algebra().field(), rng), f.x.degree};
    AlgebraElement x(f.x), yy(y);
    ASSERT_EQ(s.multiply(s.elementary(f.i, f.j, x), s.elementary(f.i, f.j, yy)), s.elementary(f.i, f.j, x + yy));
  }
}

TEST(Matrices, DegreeAdditivityAndInverse) {
  Rng rng(4);
  for (auto name : {"twosym13", "quat5_shift10", "quat13_half", "quat_cyc8"}) {
    auto s = load_sample(name).matrix_algebra();
    for (int t = 0; t < 20; ++t) {
      auto a = random_homogeneous_invertible(s, rng), b = random_homogeneous_invertible(s, rng);
      auto ab = s.multiply(a, b);
      ASSERT_EQ(s.degree(ab), s.degree(a) + s.degree(b));
      auto inv = s.invert(a);
      ASSERT_EQ(s.multiply(a, inv), s.identity());
      ASSERT_EQ(s.multiply(inv, a), s.identity());
      ASSERT_EQ(s.degree(inv), -s.degree(a));
    }
  }
}

TEST(Matrices, InverseOfDiagonalAndProducts) {
  Rng rng(5);
  auto s = load_sample("twosym13").matrix_algebra(3);
  const auto& E = s.algebra();
  std::vector<HomogeneousUnit> us, inv;
  const GradeVector d = random_degree(E, rng);
  for (int i = 0; i < 3; ++i) {
    us.push_back(random_unit(E, d, rng));
    inv.push_back(E.invert_homogeneous(us.back()));
  }
  EXPECT_EQ(s.invert(s.diagonal(us)), s.diagonal(inv));
  GradedMatrix a = s.monomial(random_monomial(s, rng));
  for (int k = 0; k < 5; ++k) {
    auto f = random_elementary(s, rng);
    a = s.multiply(s.elementary(f.i, f.j, AlgebraElement(f.x)), a);
  }
  EXPECT_EQ(s.multiply(a, s.invert(a)), s.identity());
  EXPECT_EQ(s.multiply(s.identity(), a), a);
}

TEST(Transport, PreservesDegreesAndProducts) {
  Rng rng(6);
  for (auto name : {"quat13_blocks", "quat5_shift10"}) {
    auto s = load_sample(name).matrix_algebra();
    auto eps = s.epsilon_algebra();
    EXPECT_TRUE(eps.is_epsilon_form());
    for (int t = 0; t < 20; ++t) {
      auto a = random_homogeneous_invertible(s, rng), b = random_homogeneous_invertible(s, rng);
      auto ta = s.to_epsilon(a);
      ASSERT_EQ(eps.degree(ta), s.degree(a));
      ASSERT_EQ(s.from_epsilon(ta), a);
      ASSERT_EQ(eps.multiply(ta, s.to_epsilon(b)), s.to_epsilon(s.multiply(a, b)));
    }
  }
}

TEST(Warnings, ExceptionalF2) {
  EXPECT_TRUE(load_sample("gfield2").matrix_algebra().exceptional_f2());
  EXPECT_FALSE(load_sample("gfield2").matrix_algebra(3).exceptional_f2());
  EXPECT_FALSE(load_sample("gfield3").matrix_algebra().exceptional_f2());
}
