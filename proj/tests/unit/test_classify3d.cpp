#include <gtest/gtest.h>

#include <random>

#include "../support/oracle.hpp"
#include "halfflat/classify3d.hpp"

using namespace halfflat;

TEST(MilnorL, Examples) {
  EXPECT_EQ(milnor_L(catalog("su2")), Matrix<Scalar>::identity(3));
  EXPECT_EQ(inertia(milnor_L(catalog("e11"))), (Inertia{1, 1, 1}));
  EXPECT_EQ(inertia(milnor_L(catalog("sl2"))), (Inertia{2, 1, 0}));
}

TEST(MilnorL, CrossProductRelation) {
  // [u, v] = L (u x v) with e_1 x e_2 = -e_3 and cyclic.
  std::mt19937_64 rng(51);
  for (const auto& g : oracle::catalog_instances()) {
    const auto l = milnor_L(g);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector u = oracle::random_vector(rng), v = oracle::random_vector(rng);
      std::array<Scalar, 3> cross = {-(u[1] * v[2] - u[2] * v[1]), -(u[2] * v[0] - u[0] * v[2]),
                                     -(u[0] * v[1] - u[1] * v[0])};
      Vector x{}, y{};
      x.fill(0);
      y.fill(0);
      for (int i = 0; i < 3; ++i) x[i] = u[i], y[i] = v[i];
      const Vector br = g.bracket(x, y);
      for (int j = 0; j < 3; ++j) {
        Scalar acc = 0;
        for (int k = 0; k < 3; ++k) acc += l(j, k) * cross[k];
        ASSERT_EQ(br[j], acc) << g.name();
      }
    }
  }
}

TEST(MilnorL, SymmetricIffUnimodular) {
  for (const auto& g : oracle::catalog_instances()) EXPECT_EQ(milnor_L(g).is_symmetric(), is_unimodular(g)) << g.name();
}

TEST(Classify, Examples) {
  const Scalar mu = rational(1, 2);
  const auto c = classify(catalog("r3mu", mu));
  EXPECT_EQ(c.tag, "r3mu");
  ASSERT_TRUE(c.determinant.has_value());
  EXPECT_EQ(*c.determinant, 4 * mu / ((mu + 1) * (mu + 1)));
  EXPECT_EQ(*c.determinant, rational(8, 9));
  ASSERT_TRUE(c.mu.has_value());
  EXPECT_EQ(*c.mu, mu);

  const auto v = classify(catalog("r31"));
  EXPECT_EQ(v.tag, "r31");
  EXPECT_EQ(*v.determinant, 1);
  EXPECT_TRUE(v.l_tilde_identity);
  EXPECT_EQ(v.bianchi, "V");

  const auto iv = classify(catalog("r3"));
  EXPECT_EQ(*iv.determinant, 1);
  EXPECT_FALSE(iv.l_tilde_identity);

  EXPECT_EQ(classify(catalog("R3")).bianchi, "I");
  EXPECT_EQ(classify(catalog("e11")).display, "e(1,1)");
  EXPECT_EQ(classify(catalog("e11")).bianchi, "VI_0");
  EXPECT_EQ(classify(catalog("e11")).invariant(), "(+,-,0)");
  EXPECT_EQ(*classify(catalog("r2R")).determinant, 0);
  EXPECT_EQ(*classify(catalog("r3pmu", 2)).determinant, 1 + rational(1, 4));
}

TEST(Classify, RejectsNonAlgebra) {
  const auto bad = LieAlgebra::unchecked(3, {oracle::mono({2, 3}), oracle::mono({1, 2}), KForm(2)});
  EXPECT_THROW(classify(bad), InvalidLieAlgebra);
  const auto six = direct_sum(catalog("su2"), catalog("su2"));
  EXPECT_THROW(classify(six), std::invalid_argument);
}

TEST(Property, ClassifyRoundTrip) {
  for (const auto& g : oracle::catalog_instances()) {
    const auto c = classify(g);
    EXPECT_EQ(c.tag, g.name());
    if (g.params().count("mu")) {
      ASSERT_TRUE(c.mu.has_value()) << g.name();
      EXPECT_EQ(*c.mu, g.params().at("mu"));
    }
  }
}

TEST(Property, ClassifyInvariantUnderBasisChange) {
  std::mt19937_64 rng(52);
  int cases = 0;
  for (const auto& g : oracle::catalog_instances()) {
    const auto expected = classify(g);
    for (int trial = 0; trial < 20; ++trial) {
      const auto h = g.change_basis(oracle::random_invertible3(rng));
      const auto c = classify(h);
      ASSERT_EQ(c.tag, expected.tag);
      if (expected.determinant) ASSERT_EQ(*c.determinant, *expected.determinant);
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}
