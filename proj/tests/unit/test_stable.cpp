#include <gtest/gtest.h>

#include <random>

#include "../support/oracle.hpp"
#include "halfflat/stable.hpp"

using namespace halfflat;
using oracle::mono;

namespace {

Matrix<Scalar> diag(std::initializer_list<long> d) {
  Matrix<Scalar> m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) m(i, i) = x, ++i;
  return m;
}

// omega(u, K v) without any sign convention applied.
Matrix<Scalar> plain_pairing(const KForm& omega, const KForm& rho) {
  const auto k = k_matrix(rho);
  Matrix<Scalar> out(6, 6);
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) {
      Vector kv;
      for (int r = 0; r < 6; ++r) kv[r] = k(r, v);
      out(u, v) = evaluate2(omega, basis_vector<Scalar>(u), kv);
    }
  return out;
}


}  // namespace

TEST(KMatrix, Examples) {
  const auto k_para = k_matrix(mono({1, 2, 3}) + mono({4, 5, 6}));
  EXPECT_EQ(k_para(0, 0), 1);
  EXPECT_EQ(k_para(3, 3), -1);
  const auto k_dec = k_matrix(mono({1, 2, 3}));
  EXPECT_TRUE((k_dec * k_dec).is_zero_matrix());
  EXPECT_LT(rank(k_dec), 6u);
  const auto k_herm = k_matrix(oracle::hermitian_model().second);
  EXPECT_EQ(k_herm(3, 0), 2);
  EXPECT_EQ(k_herm(0, 3), -2);
}

TEST(Lambda, Examples) {
  EXPECT_EQ(lambda_of(mono({1, 2, 3}) + mono({4, 5, 6})), 1);
  EXPECT_EQ(lambda_of(mono({1, 2, 3})), 0);
  EXPECT_EQ(lambda_of(oracle::hermitian_model().second), -4);
}

TEST(JOnOneForms, ModelFrame) {
  const KForm rho = oracle::hermitian_model().second;
  EXPECT_EQ(j_apply_oneform(rho, mono({1}), basis_vector<Scalar>(0)), QuadExt(0));
  // K(e_4) = -2 e_1 and phi = 2 nu
  EXPECT_EQ(j_apply_oneform(rho, mono({1}), basis_vector<Scalar>(3)), QuadExt(-1));
  EXPECT_THROW(j_apply_oneform(mono({1, 2, 3}), mono({1}), basis_vector<Scalar>(0)), NotStableError);
}

TEST(Compatible, Examples) {
  auto [omega, rho] = oracle::hermitian_model();
  EXPECT_TRUE(is_compatible(omega, rho));
  EXPECT_TRUE(is_compatible(mono({1, 2}), mono({1, 2, 3})));
  EXPECT_FALSE(is_compatible(mono({4, 5}), mono({1, 2, 3})));
}

TEST(Normalization, Examples) {
  auto [omega, rho] = oracle::hermitian_model();
  auto n = normalization_scale(omega, rho);
  EXPECT_EQ(n.c4, 1);
  EXPECT_EQ(n.sign, 1);
  EXPECT_EQ(normalization_scale(omega, Scalar(3) * rho).c4, n.c4 / 81);
  EXPECT_THROW(normalization_scale(omega, mono({1, 2, 3})), NotStableError);
}

// eps is re-derived here from the model frames rather than trusted.
TEST(Metric, EpsCalibration) {
  {
    auto [omega, rho] = oracle::hermitian_model();
    const auto plain = plain_pairing(omega, rho);
    const int s = sign_of(phi_of(omega));
    int calibrated = 0;
    for (int eps : {-1, 1})
      if (Scalar(eps * s) * plain == Scalar(2) * Matrix<Scalar>::identity(6)) calibrated = eps;
    ASSERT_NE(calibrated, 0);
    EXPECT_EQ(metric_eps(-1), calibrated);
    EXPECT_EQ(induced_metric_raw(omega, rho).g_hat, Scalar(2) * Matrix<Scalar>::identity(6));
  }
  {
    auto [omega, rho] = oracle::para_model();
    Matrix<Scalar> expected(6, 6);
    for (int i = 0; i < 3; ++i) expected(i, i + 3) = expected(i + 3, i) = 1;
    const auto plain = plain_pairing(omega, rho);
    const int s = sign_of(phi_of(omega));
    int calibrated = 0;
    for (int eps : {-1, 1})
      if (Scalar(eps * s) * plain == expected) calibrated = eps;
    ASSERT_NE(calibrated, 0);
    EXPECT_EQ(metric_eps(1), calibrated);
  }
}

TEST(Metric, AsymmetricThrows) {
  EXPECT_THROW(induced_metric_raw(mono({1, 4}) + mono({2, 5}) + mono({3, 6}), mono({1, 2, 3}) + mono({4, 5, 6}) +
                                                                                   mono({1, 2, 5})),
               NotCompatibleError);
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(Matrix<Scalar>::identity(6)), (Inertia{6, 0, 0}));
  EXPECT_EQ(signature(diag({1, 1, -1, -1, -1, -1})), (Inertia{2, 4, 0}));
}

TEST(StructureTypeVerdict, Examples) {
  auto [omega, rho] = oracle::hermitian_model();
  EXPECT_EQ(structure_type(omega, rho).kind, StructureKind::SU3);
  KForm sum_omega = mono({1, 4}) + mono({2, 5}) + mono({3, 6});
  EXPECT_EQ(structure_type(sum_omega, mono({1, 2, 3}) + mono({4, 5, 6})).kind, StructureKind::SL3R);
  EXPECT_EQ(structure_type(sum_omega, mono({1, 2, 3})).kind, StructureKind::NotStable);
  EXPECT_EQ(structure_type(mono({1, 2}), rho).kind, StructureKind::NotStable);
  EXPECT_EQ(structure_type(sum_omega, rho + mono({1, 2, 5})).kind, StructureKind::NotCompatible);
}

TEST(StructureTypeVerdict, OrientationReversedFrame) {
  // omega = +sum e^i f^i has phi(omega) = -nu; the metric stays definite.
  auto [omega, rho] = oracle::hermitian_model();
  const auto t = structure_type(KForm(-omega), KForm(-rho));
  EXPECT_EQ(t.kind, StructureKind::SU3);
}

TEST(Property, KSquaredIsLambdaIdentity) {
  std::mt19937_64 rng(41);
  int stable = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const KForm rho = oracle::random_form(rng, 3, 6, 0.5);
    const auto k = k_matrix(rho);
    const Scalar lambda = lambda_of(k);
    ASSERT_EQ(k * k, lambda * Matrix<Scalar>::identity(6));
    if (!is_zero(lambda)) ++stable;
  }
  EXPECT_GT(stable, 100);
}

TEST(Property, LambdaQuartic) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 250; ++trial) {
    const KForm rho = oracle::random_form(rng, 3, 6, 0.5);
    const Scalar c = oracle::random_rational(rng, 4, 5);
    ASSERT_EQ(lambda_of(KForm(c * rho)), c * c * c * c * lambda_of(rho));
  }
}

TEST(Property, ParaEigenspacesAreThreeDimensional) {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 200; ++trial) {
    const KForm rho = oracle::random_form(rng, 3, 6, 0.5);
    const auto k = k_matrix(rho);
    const Scalar lambda = lambda_of(k);
    if (lambda <= 0) continue;
    Scalar root;
    if (rational_sqrt(lambda, root)) {
      const auto id = Matrix<Scalar>::identity(6);
      EXPECT_EQ(rank(k - root * id), 3u);
      EXPECT_EQ(rank(k - Scalar(-root) * id), 3u);
    } else {
      // K / sqrt(lambda) over Q(sqrt(lambda)): eigenspaces of K with eigenvalue +-sqrt(lambda)
      Matrix<QuadExt> kq(6, 6);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) kq(i, j) = QuadExt(k(i, j));
      const QuadExt r = QuadExt::sqrt(lambda);
      const auto id = Matrix<QuadExt>::identity(6);
      EXPECT_EQ(rank(kq - r * id), 3u);
      EXPECT_EQ(rank(kq - QuadExt(-r) * id), 3u);
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Property, MetricSymmetricIffCompatible) {
  std::mt19937_64 rng(44);
  int compatible = 0, incompatible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    oracle::RandomPair p = oracle::random_pair(rng);
    if (trial % 2) p.rho += oracle::random_form(rng, 3, 6, 0.2);
    const auto k = k_matrix(p.rho);
    if (is_zero(lambda_of(k)) || is_zero(phi_of(p.omega))) continue;
    const bool comp = is_compatible(p.omega, p.rho);
    bool symmetric = true;
    try {
      induced_metric_raw(p.omega, k);
    } catch (const NotCompatibleError&) {
      symmetric = false;
    }
    ASSERT_EQ(symmetric, comp);
    (comp ? compatible : incompatible) += 1;
  }
  EXPECT_GT(compatible, 100);
  EXPECT_GT(incompatible, 100);
}

TEST(Property, ModelKindsSurviveCoframeChange) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    const oracle::RandomPair p = oracle::random_pair(rng);
    ASSERT_EQ(structure_type(p.omega, p.rho).kind, p.kind);
  }
}

// alpha ^ J*beta ^ omega^2 = (1/3) g(alpha, beta) omega^3, multiplied through by
// sqrt|lambda| so that both sides are rational:
//   s * alpha ^ (beta o K) ^ omega^2 = (1/3) |lambda| (alpha G^-1 beta) omega^3.
TEST(Property, MetricOnOneFormsIdentity) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 200; ++trial) {
    const oracle::RandomPair p = oracle::random_pair(rng);
    const auto k = k_matrix(p.rho);
    const Scalar lambda = lambda_of(k);
    const auto raw = induced_metric_raw(p.omega, k);
    const auto g_inv = inverse(raw.g_hat);
    const Vector a = oracle::random_vector(rng), b = oracle::random_vector(rng);
    Vector bk;
    for (int j = 0; j < 6; ++j) {
      bk[j] = 0;
      for (int i = 0; i < 6; ++i) bk[j] += b[i] * k(i, j);
    }
    const KForm omega2 = wedge(p.omega, p.omega);
    Scalar lhs = volume_ratio(wedge(wedge(one_form(a), one_form(bk)), omega2)).value * raw.orientation;
    Scalar pairing = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) pairing += a[i] * g_inv(i, j) * b[j];
    const Scalar rhs = abs(lambda) * pairing * volume_ratio(wedge(omega2, p.omega)).value / 3;
    ASSERT_EQ(lhs, rhs) << "kind " << to_string(p.kind);
  }
}

TEST(StablePairCache, Fields) {
  auto [omega, rho] = oracle::hermitian_model();
  const StablePair pair(omega, rho);
  EXPECT_EQ(pair.lambda(), -4);
  EXPECT_EQ(pair.phi_omega(), 1);
  EXPECT_EQ(pair.eps(), -1);
  ASSERT_TRUE(pair.g_raw().has_value());
  EXPECT_EQ(*pair.g_raw(), Scalar(2) * Matrix<Scalar>::identity(6));
  EXPECT_EQ(*pair.norm_c4(), 1);
  EXPECT_EQ(pair.type().kind, StructureKind::SU3);
}
