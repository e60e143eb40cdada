#include <random>
#include <set>

#include <gtest/gtest.h>

#include "gda/algebra.hpp"
#include "gda/error.hpp"

using namespace gda;

namespace {

GradedDivisionAlgebra quaternion(const CoefficientField& f) {
  auto one = f.one(), m1 = f.from_integer(-1);
  return GradedDivisionAlgebra::make({f, 2, {{1, 0}, {0, 1}}, {{one, m1}, {m1, one}}});
}

GradedDivisionAlgebra two_symbols(const CoefficientField& f) {
  auto one = f.one(), m1 = f.from_integer(-1);
  std::vector<std::vector<FieldElement>> c(4, std::vector<FieldElement>(4, one));
  c[0][1] = c[1][0] = m1;
  c[2][3] = c[3][2] = m1;
  return GradedDivisionAlgebra::make({f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, c});
}

GradedDivisionAlgebra cyclic_symbol(const CoefficientField& f, const FieldElement& w) {
  return GradedDivisionAlgebra::make({f, 2, {{1, 0}, {0, 1}}, {{f.one(), w}, {w.inverse(), f.one()}}});
}

GradeVector random_degree(const GradedDivisionAlgebra& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<std::int64_t> x(a.basis().size());
  for (auto& v : x) v = d(rng);
  return a.from_coordinates(x);
}

FieldElement random_unit(const CoefficientField& f, std::mt19937_64& rng) {
  if (f.is_finite()) return f.from_integer(1 + static_cast<long>(rng() % (f.modulus() - 1)));
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<mpq_class> poly(f.degree());
  for (auto& x : poly) x = c(rng);
  auto y = make_cyclotomic_element(f, poly);
  return y.is_zero() ? f.one() : y;
}

AlgebraElement random_element(const GradedDivisionAlgebra& a, std::mt19937_64& rng) {
  AlgebraElement x;
  for (int t = 0; t < 3; ++t) x = x + AlgebraElement(HomogeneousUnit{random_unit(a.field(), rng), random_degree(a, rng)});
  return x;
}

// Gamma_T membership straight from the definition, on a box of coordinates.
bool in_radical_by_scan(const GradedDivisionAlgebra& a, const GradeVector& gamma) {
  for (const auto& g : a.basis())
    if (!a.beta(gamma, g).is_one()) return false;
  return true;
}

}  // namespace

TEST(Algebra, QuaternionInvariants) {
  auto a = quaternion(CoefficientField::prime(13));
  EXPECT_EQ(a.gamma_t(), Lattice(2, std::vector<GradeVector>{{2, 0}, {0, 2}}));
  EXPECT_EQ(a.quotient_group().to_string(), "Z/2 x Z/2");
  EXPECT_EQ(a.index(), 2u);
  EXPECT_EQ(a.exponent(), 2u);
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y) EXPECT_EQ(a.gamma_t().contains({x, y}), in_radical_by_scan(a, {x, y}));
}

TEST(Algebra, TwoSymbolInvariants) {
  auto a = two_symbols(CoefficientField::prime(13));
  EXPECT_EQ(a.quotient_group().order(), 16);
  EXPECT_EQ(a.index(), 4u);
  EXPECT_EQ(a.exponent(), 2u);
  EXPECT_EQ(a.lambda().invariant_factors().size(), 6u);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    auto g = random_degree(a, rng);
    EXPECT_EQ(a.gamma_t().contains(g), in_radical_by_scan(a, g));
  }
}

TEST(Algebra, CyclicSymbolOrderFour) {
  auto f = CoefficientField::prime(13);
  auto a = cyclic_symbol(f, f.from_integer(5));
  EXPECT_EQ(a.quotient_group().to_string(), "Z/4 x Z/4");
  EXPECT_EQ(a.index(), 4u);
  EXPECT_EQ(a.exponent(), 4u);
  auto b = cyclic_symbol(CoefficientField::cyclotomic(8), CoefficientField::cyclotomic(8).zeta());
  EXPECT_EQ(b.index(), 8u);
  EXPECT_EQ(b.exponent(), 8u);
}

TEST(Algebra, GradedField) {
  auto f = CoefficientField::prime(13);
  auto a = GradedDivisionAlgebra::make({f, 1, {{1}}, {{f.one()}}});
  EXPECT_EQ(a.gamma_t(), a.gamma_e());
  EXPECT_EQ(a.index(), 1u);
  EXPECT_EQ(a.exponent(), 1u);
  EXPECT_TRUE(a.is_graded_field());
}

TEST(Algebra, ValidationErrors) {
  auto q8 = CoefficientField::cyclotomic(8);
  auto two = q8.from_integer(2);
  try {
    GradedDivisionAlgebra::make({q8, 2, {{1, 0}, {0, 1}}, {{q8.one(), two}, {two.inverse(), q8.one()}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRootOfUnity);
  }
  auto f = CoefficientField::prime(13);
  EXPECT_THROW(GradedDivisionAlgebra::make({f, 2, {{1, 0}, {2, 0}}, {{f.one(), f.one()}, {f.one(), f.one()}}}),
               Error);
  EXPECT_THROW(GradedDivisionAlgebra::make(
                   {f, 2, {{1, 0}, {0, 1}}, {{f.one(), f.from_integer(-1)}, {f.one(), f.one()}}}),
               Error);
}

TEST(Algebra, CoordinatesRejectDegreesOutsideGammaE) {
  auto f = CoefficientField::prime(5);
  auto a = GradedDivisionAlgebra::make(
      {f, 2, {{7, 0}, {0, 1}}, {{f.one(), f.from_integer(-1)}, {f.from_integer(-1), f.one()}}});
  EXPECT_EQ(a.coordinates({14, -3}), (std::vector<std::int64_t>{2, -3}));
  try {
    a.coordinates({1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeOutsideGammaE);
  }
}

TEST(Algebra, DefiningRelations) {
  auto a = quaternion(CoefficientField::prime(13));
  auto e1 = a.monomial({1, 0}), e2 = a.monomial({0, 1});
  auto p12 = a.multiply(e1, e2), p21 = a.multiply(e2, e1);
  EXPECT_EQ(p12.degree, p21.degree);
  EXPECT_EQ(p12.coeff, a.field().from_integer(-1) * p21.coeff);
  EXPECT_EQ(a.multiply(e1, e1), a.monomial({2, 0}));
  EXPECT_EQ(a.commutator(e1, e2), a.field().from_integer(-1));
  EXPECT_TRUE(a.commutator(e1, e1).is_one());
  EXPECT_EQ(a.psi({1, 0}, {0, 1}), a.field().from_integer(-1));
}

TEST(Algebra, AssociativityAndInverses) {
  std::mt19937_64 rng(9);
  for (auto a : {two_symbols(CoefficientField::prime(13)), cyclic_symbol(CoefficientField::cyclotomic(8),
                                                                         CoefficientField::cyclotomic(8).zeta())}) {
    for (int t = 0; t < 60; ++t) {
      auto x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
      ASSERT_EQ(a.multiply(a.multiply(x, y), z), a.multiply(x, a.multiply(y, z)));
      ASSERT_EQ(a.multiply(AlgebraElement(a.one()), x), x);
      HomogeneousUnit u{random_unit(a.field(), rng), random_degree(a, rng)};
      auto v = a.invert_homogeneous(u);
      ASSERT_EQ(a.multiply(u, v), a.one());
      ASSERT_EQ(a.multiply(v, u), a.one());
    }
  }
  auto a = quaternion(CoefficientField::prime(13));
  EXPECT_THROW(a.invert_homogeneous({a.field().zero(), {0, 0}}), Error);
}

TEST(Algebra, PairingIsSymplecticOnClasses) {
  std::mt19937_64 rng(4);
  auto a = two_symbols(CoefficientField::prime(13));
  for (int t = 0; t < 200; ++t) {
    auto g = random_degree(a, rng), h = random_degree(a, rng), k = random_degree(a, rng);
    HomogeneousUnit u{random_unit(a.field(), rng), g}, v{random_unit(a.field(), rng), h};
    ASSERT_EQ(a.commutator(u, v), a.beta(g, h));
    ASSERT_TRUE(a.beta(g, g).is_one());
    ASSERT_EQ(a.beta(g + h, k), a.beta(g, k) * a.beta(h, k));
    // depends only on classes mod Gamma_T
    auto t1 = a.gamma_t().basis_vectors()[rng() % a.gamma_t().rank()];
    ASSERT_EQ(a.beta(g + t1, h), a.beta(g, h));
  }
}

TEST(Algebra, PsiImageGeneratesMuE) {
  auto f13 = CoefficientField::prime(13);
  for (auto a : {quaternion(f13), two_symbols(f13), cyclic_symbol(f13, f13.from_integer(5))}) {
    std::set<std::uint64_t> generated{1};
    std::vector<std::uint64_t> frontier{1};
    std::vector<FieldElement> gens;
    for (const auto& g : a.basis())
      for (const auto& h : a.basis()) gens.push_back(a.psi(g, h));
    while (!frontier.empty()) {
      auto x = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        auto y = (f13.from_integer(static_cast<long>(x)) * g).residue();
        if (generated.insert(y).second) frontier.push_back(y);
      }
    }
    EXPECT_EQ(generated.size(), a.mu_e().order);
  }
}

TEST(Algebra, AbelianizeSpecExamples) {
  auto f = CoefficientField::prime(13);
  auto a = quaternion(f);
  GradeVector zero{0, 0};
  EXPECT_EQ(a.abelianize({f.from_integer(-1), zero}), a.identity_class());
  EXPECT_EQ(a.abelianize({f.from_integer(5), zero}), a.abelianize({f.from_integer(8), zero}));
  EXPECT_NE(a.abelianize({f.from_integer(5), zero}), a.abelianize({f.from_integer(6), zero}));
}

TEST(Algebra, AbelianizeIsHomomorphism) {
  std::mt19937_64 rng(12);
  auto q8 = CoefficientField::cyclotomic(8);
  for (auto a : {two_symbols(CoefficientField::prime(13)), cyclic_symbol(q8, q8.zeta())}) {
    for (int t = 0; t < 200; ++t) {
      HomogeneousUnit u{random_unit(a.field(), rng), random_degree(a, rng)};
      HomogeneousUnit v{random_unit(a.field(), rng), random_degree(a, rng)};
      ASSERT_EQ(a.abelianize(a.multiply(u, v)), a.combine(a.abelianize(u), a.abelianize(v)));
    }
  }
}
