#include <random>

#include <gtest/gtest.h>

#include "gda/error.hpp"
#include "gda/grading.hpp"

using namespace gda;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (auto r : rows) {
    m.emplace_back();
    for (long x : r) m.back().emplace_back(x);
  }
  return m;
}

bool is_diagonal_chain(const IntMatrix& d) {
  std::size_t r = d.size(), c = r ? d[0].size() : 0;
  Integer prev = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (i != j && d[i][j] != 0) return false;
      if (i == j) {
        if (d[i][i] < 0) return false;
        if (prev == 0 && d[i][i] != 0) return false;
        if (prev != 0 && d[i][i] % prev != 0) return false;
        prev = d[i][i];
      }
    }
  return true;
}

}  // namespace

TEST(Smith, SpecExamples) {
  auto f = smith_normal_form(mat({{2, 0}, {0, 4}}));
  EXPECT_EQ(f.D, mat({{2, 0}, {0, 4}}));
  f = smith_normal_form(mat({{2, 1}, {0, 2}}));
  EXPECT_EQ(f.D, mat({{1, 0}, {0, 4}}));
  f = smith_normal_form(mat({{0}}));
  EXPECT_EQ(f.D, mat({{0}}));
}

TEST(Smith, RandomMatricesSatisfyUMVEqualsD) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), val(-12, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, std::vector<Integer>(c));
    for (auto& row : m)
      for (auto& x : row) x = val(rng);
    auto f = smith_normal_form(m);
    ASSERT_EQ(multiply(multiply(f.U, m), f.V), f.D);
    ASSERT_TRUE(is_diagonal_chain(f.D));
    ASSERT_EQ(abs(determinant(f.U)), 1);
    ASSERT_EQ(abs(determinant(f.V)), 1);
  }
}

TEST(Lattice, HermiteFormIsCanonical) {
  Lattice a(2, std::vector<GradeVector>{{2, 0}, {0, 2}});
  Lattice b(2, std::vector<GradeVector>{{2, 2}, {0, 2}, {4, 6}});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains(GradeVector{4, -2}));
  EXPECT_FALSE(a.contains(GradeVector{1, 0}));
  EXPECT_EQ(a.reduce({3, -1}), (GradeVector{1, 1}));
}

TEST(Quotient, SpecExamples) {
  auto z2 = Lattice::whole(2);
  auto q = quotient(z2, Lattice(2, std::vector<GradeVector>{{2, 0}, {0, 2}}));
  EXPECT_EQ(q.torsion.to_string(), "Z/2 x Z/2");
  EXPECT_EQ(q.free_rank, 0u);
  q = quotient(z2, Lattice(2, std::vector<GradeVector>{{1, 0}, {0, 2}}));
  EXPECT_EQ(q.torsion.to_string(), "Z/2");
  q = quotient(z2, Lattice::zero(2));
  EXPECT_TRUE(q.torsion.is_trivial());
  EXPECT_EQ(q.free_rank, 2u);
}

TEST(Quotient, SelfQuotientTrivial) {
  Lattice l(3, std::vector<GradeVector>{{1, 2, 3}, {0, 5, 1}});
  auto q = quotient(l, l);
  EXPECT_TRUE(q.torsion.is_trivial());
  EXPECT_EQ(q.free_rank, 0u);
}

TEST(Quotient, RejectsNonSubgroup) {
  try {
    quotient(Lattice(2, std::vector<GradeVector>{{2, 0}, {0, 1}}), Lattice::whole(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotASubgroup);
  }
}

TEST(Quotient, OrderMatchesDeterminant) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> val(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(3, std::vector<Integer>(3));
    for (auto& row : m)
      for (auto& x : row) x = val(rng);
    Integer det = determinant(m);
    if (det == 0) continue;
    auto q = quotient(Lattice::whole(3), Lattice(3, m));
    ASSERT_EQ(q.free_rank, 0u);
    ASSERT_EQ(q.torsion.order(), abs(det));
  }
}

TEST(ExteriorSquare, SpecExamples) {
  auto q = FiniteAbelianGroup::from_cyclic_orders({2, 2});
  EXPECT_EQ(exterior_square(q).to_string(), "Z/2");
  EXPECT_EQ(exterior_square(q).exponent(), 2);
  q = FiniteAbelianGroup::from_cyclic_orders({2, 2, 2, 2});
  auto l = exterior_square(q);
  EXPECT_EQ(l.invariant_factors().size(), 6u);
  EXPECT_EQ(l.exponent(), 2);
  EXPECT_TRUE(exterior_square(FiniteAbelianGroup::from_cyclic_orders({4})).is_trivial());
  EXPECT_EQ(exterior_square(FiniteAbelianGroup::from_cyclic_orders({4})).exponent(), 1);
}

TEST(ExteriorSquare, OrderIsProductOverPairs) {
  std::vector<std::vector<Integer>> cases = {{2, 4, 12}, {3, 3}, {2, 6, 6, 12}, {5}};
  for (const auto& orders : cases) {
    auto q = FiniteAbelianGroup::from_cyclic_orders(orders);
    const auto& d = q.invariant_factors();
    Integer expected = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) expected *= d[i];
    EXPECT_EQ(exterior_square(q).order(), expected);
  }
}

TEST(CosetOrder, SpecExamples) {
  Lattice l(2, std::vector<GradeVector>{{7, 0}, {0, 1}});
  EXPECT_EQ(*coset_order({1, 0}, l), 7);
  EXPECT_EQ(*coset_order({14, 3}, l), 1);
  EXPECT_FALSE(coset_order({1, 0}, Lattice(2, std::vector<GradeVector>{{0, 1}})).has_value());
}

TEST(CosetOrder, MinimalityByDirectMembership) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(2, std::vector<Integer>(2));
    for (auto& row : m)
      for (auto& x : row) x = val(rng);
    Lattice l(2, m);
    GradeVector v{val(rng), val(rng)};
    auto order = coset_order(v, l);
    if (!order) {
      for (int j = 1; j < 50; ++j) ASSERT_FALSE(l.contains(scale(j, v)));
      continue;
    }
    auto mo = to_int64(*order);
    ASSERT_TRUE(l.contains(scale(mo, v)));
    for (std::int64_t j = 1; j < mo; ++j) ASSERT_FALSE(l.contains(scale(j, v)));
  }
}
