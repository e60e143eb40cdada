#include <gtest/gtest.h>

#include "gda/error.hpp"
#include "gda/samples.hpp"
#include "gda/sampling.hpp"
#include "gda/sk.hpp"

using namespace gda;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ValidationError;
}

const char* kAllSamples[] = {"quat13", "twosym13", "cyc4_13", "gfield13", "gfield3", "gfield5", "gfield2", "quat5",
                             "quat3", "quat_cyc8", "sym4_cyc8", "quat5_shift7", "quat5_shift10", "quat13_half",
                             "quat13_blocks", "quat_cyc8_shift7"};

}  // namespace

TEST(Nrd, IdentityIsOne) {
  for (auto name : {"quat13", "quat5_shift10", "quat13_blocks"}) {
    auto inst = load_sample(name);
    auto s = inst.shifts ? inst.matrix_algebra() : inst.matrix_algebra(3);
    EXPECT_TRUE(nrd_S0(s, s.identity()).is_one());
    EXPECT_TRUE(nrd_S(s, s.identity()).is_one());
  }
}

TEST(Nrd, DiagonalUnderArithmeticShifts) {
  Rng rng(20);
  auto s = load_sample("quat5_shift10").matrix_algebra();
  const auto& E = s.algebra();
  const auto& f = E.field();
  const GradeVector zero(E.ambient_rank(), 0);
  for (int t = 0; t < 20; ++t) {
    std::vector<HomogeneousUnit> u;
    FieldElement prod = f.one();
    for (std::size_t i = 0; i < s.n(); ++i) {
      u.push_back({random_nonzero(f, rng), zero});
      prod *= u.back().coeff;
    }
    auto d = s.diagonal(u);
    EXPECT_EQ(nrd_S0(s, d), prod);
    EXPECT_EQ(nrd_S(s, d), prod.pow(static_cast<std::int64_t>(E.index())));
  }
}

TEST(Nrd, BlockTriangularProduct) {
  Rng rng(21);
  auto s = load_sample("twosym13").matrix_algebra(5);
  const auto& f = s.algebra().field();
  for (int t = 0; t < 20; ++t) {
    // Diagonal blocks of sizes 2 and 3 with an arbitrary upper-right corner.
    auto b1 = random_invertible_field_matrix(f, 2, rng), b2 = random_invertible_field_matrix(f, 3, rng);
    FieldMatrix m(5, std::vector<FieldElement>(5, f.zero()));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m[i][j] = b1[i][j];
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m[2 + i][2 + j] = b2[i][j];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 2; j < 5; ++j) m[i][j] = random_field_element(f, rng);
    auto a = s.block_assemble({m});
    EXPECT_EQ(nrd_S0(s, a), field_determinant(b1) * field_determinant(b2));
  }
}

TEST(Nrd, MultiplicativeAndKillsCommutators) {
  Rng rng(22);
  for (auto name : {"twosym13", "quat_cyc8", "quat13_blocks", "quat5_shift10"}) {
    auto inst = load_sample(name);
    auto s = inst.shifts ? inst.matrix_algebra() : inst.matrix_algebra(3);
    for (int t = 0; t < 15; ++t) {
      auto a = random_degree0_invertible(s, rng), b = random_degree0_invertible(s, rng);
      EXPECT_EQ(nrd_S(s, s.multiply(a, b)), nrd_S(s, a) * nrd_S(s, b));
      auto c = s.multiply(s.multiply(a, b), s.multiply(s.invert(a), s.invert(b)));
      EXPECT_TRUE(nrd_S(s, c).is_one());
    }
  }
}

TEST(Nrd, SingularAndWrongDegree) {
  auto s = load_sample("quat13").matrix_algebra(2);
  auto z = s.identity();
  z.at(0, 0) = AlgebraElement();
  EXPECT_EQ(code_of([&] { nrd_S0(s, z); }), ErrorCode::Singular);
  auto m = s.scalar(s.algebra().monomial(s.algebra().basis()[0]));
  EXPECT_EQ(code_of([&] { nrd_S(s, m); }), ErrorCode::NotDegreeZero);
}

TEST(InSh1, Examples) {
  Rng rng(23);
  for (auto name : {"twosym13", "quat_cyc8", "quat13_half"}) {
    auto inst = load_sample(name);
    auto s = inst.shifts ? inst.matrix_algebra() : inst.matrix_algebra(3);
    const auto& E = s.algebra();
    EXPECT_TRUE(in_Sh1(s, s.identity()));
    for (int t = 0; t < 20; ++t) {
      auto a = random_homogeneous_invertible(s, rng);
      if (!is_zero(s.degree(a))) EXPECT_FALSE(in_Sh1(s, a));
    }
    for (const auto& w : E.mu_s().elements()) EXPECT_TRUE(in_Sh1(s, eta(s, w)));
  }
}

TEST(XiEta, CompositionIsIdentity) {
  for (auto name : {"quat13", "twosym13", "cyc4_13", "quat5", "quat3", "quat_cyc8", "gfield13"}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      auto s = load_sample(name).matrix_algebra(n);
      const auto& E = s.algebra();
      EXPECT_EQ(eta(s, E.field().one()), s.identity());
      for (const auto& c : E.mu_s().elements()) EXPECT_EQ(xi(s, eta(s, c)), c);
    }
  }
}

TEST(XiEta, Preconditions) {
  auto s2 = load_sample("gfield2").matrix_algebra(2);
  EXPECT_EQ(code_of([&] { eta(s2, s2.algebra().field().one()); }), ErrorCode::ExceptionalF2Config);
  auto s = load_sample("quat13").matrix_algebra(2);
  EXPECT_EQ(code_of([&] { eta(s, s.algebra().field().from_integer(2)); }), ErrorCode::ValidationError);
  const auto& f = s.algebra().field();
  FieldMatrix b{{f.from_integer(2), f.zero()}, {f.zero(), f.one()}};
  EXPECT_EQ(code_of([&] { xi(s, s.block_assemble({b})); }), ErrorCode::ValidationError);
}

TEST(SkE, Examples) {
  EXPECT_EQ(sk_E(*load_sample("quat13").algebra).group.order(), 1);
  auto two = sk_E(*load_sample("twosym13").algebra);
  EXPECT_EQ(two.group, FiniteAbelianGroup::from_cyclic_orders({2}));
  EXPECT_EQ(two.components["mu_s_order"], 4);
  EXPECT_EQ(two.components["mu_e_order"], 2);
  EXPECT_TRUE(sk_E(*load_sample("gfield13").algebra).group.is_trivial());
  EXPECT_TRUE(sk_E(*load_sample("quat_cyc8").algebra).group.is_trivial());
}

TEST(SkE, MatchesFixtureExpectations) {
  for (auto name : kAllSamples) {
    auto inst = load_sample(name);
    if (auto it = inst.expect.find("sk_order"); it != inst.expect.end())
      EXPECT_EQ(sk_E(*inst.algebra).group.order(), it->second) << name;
  }
}

TEST(SkH, TwoSymbolExamples) {
  const auto inst = load_sample("twosym13");
  const auto& E = *inst.algebra;
  auto n2 = sk_h_unshifted(E, 2);
  EXPECT_EQ(n2.group.order(), 4);
  EXPECT_EQ(n2.components["kernel"]["order"], 2);
  auto n3 = sk_h_unshifted(E, 3);
  EXPECT_EQ(n3.group, FiniteAbelianGroup::from_cyclic_orders({2}));
  EXPECT_EQ(n3.components["kernel"]["order"], 1);
}

TEST(SkH, ExceptionalConfiguration) {
  const auto inst = load_sample("gfield2");
  const auto& E = *inst.algebra;
  EXPECT_EQ(code_of([&] { sk_h_unshifted(E, 2); }), ErrorCode::ExceptionalF2Config);
  EXPECT_NO_THROW(sk_h_unshifted(E, 3));
}

TEST(SkH, GradedFieldKernelTrivial) {
  for (auto name : {"gfield13", "gfield3"})
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_TRUE(kernel_group(*load_sample(name).algebra, n).group.is_trivial());
}

TEST(SkH, ExactSequenceOrders) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
  const auto& E = *inst.algebra;
    for (std::size_t n = 1; n <= 6; ++n) {
      if (n == 2 && E.field().is_finite() && E.field().modulus() == 2) continue;
      auto h = sk_h_unshifted(E, n);
      EXPECT_EQ(h.group.order(), kernel_group(E, n).group.order() * sk_E(E).group.order()) << name << " n=" << n;
    }
  }
}

TEST(KernelGroup, Periodicity) {
  for (auto name : kAllSamples) {
    const auto inst = load_sample(name);
  const auto& E = *inst.algebra;
    const std::size_t e = E.exponent();
    for (std::size_t n = 1; n <= 6; ++n) {
      auto a = kernel_group(E, n), b = kernel_group(E, n + e);
      EXPECT_EQ(a.group, b.group);
      EXPECT_EQ(a.components["lambda_mod_n"], b.components["lambda_mod_n"]);
      if (n % e == 1 % e) EXPECT_TRUE(a.group.is_trivial());
      const auto lam = a.components["lambda_mod_n"]["order"].get<std::int64_t>();
      EXPECT_EQ(lam % to_int64(a.group.order()), 0) << name;
    }
  }
  auto k4 = kernel_group(*load_sample("quat13").algebra, 4);
  EXPECT_EQ(k4.group, FiniteAbelianGroup::from_cyclic_orders({2}));
}

TEST(SkHShifted, FiniteExamples) {
  auto a7 = load_sample("quat5_shift7");
  auto g = sk_h_shifted(*a7.algebra, 2, GradeVector{1, 0});
  EXPECT_EQ(g.group.order(), 4);
  // At n = 2 and e = 2 the subgroup H is mu_e x {1}.
  const auto w = a7.algebra->mu_e().generator;
  EXPECT_TRUE(w.pow(g.components["H_last_exponent"].get<std::int64_t>()).is_one());
  EXPECT_EQ(g.group.order(), a7.expect.at("skh_order"));
  auto a10 = load_sample("quat5_shift10");
  EXPECT_EQ(sk_h_shifted(*a10.algebra, 3, GradeVector{1, 0}).group.order(), 16);
}

TEST(SkHShifted, OrderTooSmall) {
  auto a7 = load_sample("quat5_shift7");
  EXPECT_EQ(code_of([&] { sk_h_shifted(*a7.algebra, 3, GradeVector{1, 0}); }), ErrorCode::OrderTooSmall);
}

TEST(SkHShifted, CyclotomicIsStructural) {
  auto inst = load_sample("quat_cyc8_shift7");
  auto g = sk_h_shifted(*inst.algebra, 2, GradeVector{1, 0});
  EXPECT_FALSE(g.finite);
  ASSERT_EQ(g.flags.size(), 1u);
  EXPECT_EQ(g.flags[0], "InfiniteT0Star");
  EXPECT_NE(g.structure.find("not torsion"), std::string::npos);
  EXPECT_EQ(to_json(g)["finite"], false);
}
