#include <gtest/gtest.h>

#include "../support/oracle.hpp"
#include "halfflat/classify3d.hpp"
#include "halfflat/halfflat.hpp"
#include "halfflat/structure_file.hpp"

using namespace halfflat;

namespace {

const std::vector<std::string> kBasis = default_basis(6);

KForm F(std::string_view text) { return parse_form(text, kBasis); }

LieAlgebra sum(std::string_view a, std::string_view b) { return direct_sum(catalog(a), catalog(b)); }

std::vector<LieAlgebra> unimodular_catalog() {
  std::vector<LieAlgebra> out;
  for (const auto& e : catalog_entries())
    if (e.unimodular) out.push_back(catalog(e.tag));
  return out;
}

}  // namespace

TEST(Verify, EuclideanGroupPairIsHalfFlat) {
  // e(2) + e(2) with the stripped row-1 forms.
  const auto lie = sum("e2", "e2");
  const KForm omega = F("e1^f1 + e2^f2 + e3^f3");
  const KForm rho = F("e1^e2^e3 - e1^f2^f3 - e2^f3^f1 - e3^f1^f2 + e1^e2^f3 + e3^e1^f2 + e2^e3^f1 - f1^f2^f3");
  const auto report = verify(lie, omega, rho);
  EXPECT_TRUE(report.half_flat());
  EXPECT_EQ(report.structure.kind, StructureKind::SU3);
  ASSERT_TRUE(report.g_raw);
  const Matrix<Scalar>& g = *report.g_raw;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(g(i, j), g(0, 0) * Scalar(i == j ? 1 : 0));
  EXPECT_GT(g(0, 0), 0);
}

TEST(Verify, SuTwoPlusRThreeMuAtOneHalf) {
  const Scalar mu = rational(1, 2);
  const auto lie = direct_sum(catalog("su2"), catalog("r3mu", mu));
  const KForm omega = KForm(Scalar(1 / (mu + 1)) * F("e1^e2")) + F("e3^f1 - f3^f2");
  const KForm rho = F("e1^e3^f2 - e2^e3^f3 - e2^f1^f2") - KForm(mu * F("e1^f1^f3"));
  const auto report = verify(lie, omega, rho);
  EXPECT_TRUE(report.half_flat());
  EXPECT_EQ(report.structure.kind, StructureKind::SU3);
  // c^4 equals the fourth power of the stripped prefactor mu^(-1/4) (mu+1)^(-1/2).
  ASSERT_TRUE(report.norm_c4);
  EXPECT_EQ(*report.norm_c4, 1 / (mu * (mu + 1) * (mu + 1)));
}

TEST(Verify, ModelPairOnSuTwoSquaredIsNotHalfFlat) {
  const auto lie = sum("su2", "su2");
  auto [omega, rho] = oracle::hermitian_model();
  const auto report = verify(lie, omega, rho);
  EXPECT_FALSE(report.d_rho_zero);
  EXPECT_EQ(report.d_rho, oracle::d(lie, rho));
  EXPECT_FALSE(report.half_flat());
}

TEST(Verify, RejectsWrongDimensionsAndDegrees) {
  EXPECT_THROW(verify(catalog("su2"), F("e1^e2"), F("e1^e2^e3")), std::invalid_argument);
  EXPECT_THROW(verify(sum("su2", "su2"), F("e1^e2^e3"), F("e1^e2^e3")), std::invalid_argument);
}

TEST(Verify, SuOneTwoExampleOnTwoCopiesOfRTwoPlusR) {
  const auto lie = sum("r2R", "r2R");
  const KForm rho = F("-e1^e2^e3 - e1^e2^f3 - e1^e2^f2 + 2 e1^e3^f3 + e2^f1^f2 - e3^f1^f3 + f1^f2^f3");
  const KForm omega = F("e1^e3 - e1^f2 + e1^f3 + e2^f3 - f1^f2");
  auto report = verify(lie, omega, rho);
  EXPECT_TRUE(report.half_flat());
  ASSERT_TRUE(report.g_raw);
  const auto in = inertia(*report.g_raw);
  EXPECT_EQ(std::min(in.positive, in.negative), 2u);
  EXPECT_EQ(std::max(in.positive, in.negative), 4u);
  EXPECT_TRUE(report.structure.kind == StructureKind::SU21 || report.structure.kind == StructureKind::SU12);
  EXPECT_TRUE(check_isotropic_invariant_plane(report, rho, F("e1"), F("f1")));
  ASSERT_TRUE(report.isotropic_witness);
  // Printed metric up to an overall positive multiple.
  Matrix<Scalar> printed(6, 6);
  printed(1, 1) = -1;
  printed(5, 5) = -2;
  for (auto [i, j] : {std::pair{0, 2}, {0, 4}, {0, 5}, {2, 3}, {3, 5}}) printed(i, j) = printed(j, i) = 1;
  printed(1, 5) = printed(5, 1) = -1;
  const Matrix<Scalar>& g = *report.g_raw;
  const Scalar k = g(1, 1) / printed(1, 1);
  EXPECT_GT(k, 0);
  EXPECT_EQ(g, k * printed);
}

TEST(Verify, IsotropicPlaneRejectsNonInvariantSpan) {
  const auto lie = sum("r2R", "r2R");
  const KForm rho = F("-e1^e2^e3 - e1^e2^f3 - e1^e2^f2 + 2 e1^e3^f3 + e2^f1^f2 - e3^f1^f3 + f1^f2^f3");
  const KForm omega = F("e1^e3 - e1^f2 + e1^f3 + e2^f3 - f1^f2");
  auto report = verify(lie, omega, rho);
  EXPECT_FALSE(check_isotropic_invariant_plane(report, rho, F("e2"), F("f3")));
  EXPECT_FALSE(check_isotropic_invariant_plane(report, rho, F("e1"), F("2 e1")));
  EXPECT_FALSE(report.isotropic_witness);
}

TEST(Verify, ParaExampleOnRTwoPlusRPlusRThree) {
  const auto lie = sum("r2R", "r3");
  const KForm rho = F("-2 e1^e2^f3 - 2 e2^f3^f1 + e3^f1^f2 - e3^f3^f1 + f1^f2^f3");
  const KForm omega = F("e1^e3 - e2^e3 + e1^f3 + e2^f2 - e3^f1 + 2 f1^f3");
  const auto report = verify(lie, omega, rho);
  EXPECT_TRUE(report.half_flat());
  EXPECT_EQ(report.structure.kind, StructureKind::SL3R);
  ASSERT_TRUE(report.g_raw);
  const auto in = inertia(*report.g_raw);
  EXPECT_EQ(in.positive, 3u);
  EXPECT_EQ(in.negative, 3u);
  Matrix<Scalar> printed(6, 6);
  for (auto [i, j] : {std::pair{0, 2}, {0, 5}, {1, 4}, {2, 3}}) printed(i, j) = printed(j, i) = -1;
  printed(1, 2) = printed(2, 1) = 1;
  const Matrix<Scalar>& g = *report.g_raw;
  const Scalar k = g(0, 2) / printed(0, 2);
  EXPECT_FALSE(is_zero(k));
  EXPECT_EQ(g, k * printed);
}

TEST(TypeI, SuTwoSquaredIsHalfFlat) {
  const auto g = catalog("su2");
  auto [omega, rho] = ortho_type_I(g, g, 1, 1);
  EXPECT_TRUE(verify(direct_sum(g, g), omega, rho).half_flat());
}

TEST(TypeI, HeisenbergPlusAbelianWithSecondXi) {
  const auto g1 = catalog("h3"), g2 = catalog("R3");
  auto [omega, rho] = ortho_type_I(g1, g2, 0, 1);
  EXPECT_EQ(rho, F("e1^e2^f3 + e3^e1^f2 + e2^e3^f1 - f1^f2^f3"));
  EXPECT_TRUE(verify(direct_sum(g1, g2), omega, rho).half_flat());
}

TEST(TypeI, SuTwoPlusSlTwoIsNotClosed) {
  const auto g1 = catalog("su2"), g2 = catalog("sl2");
  auto [omega, rho] = ortho_type_I(g1, g2, 1, 1);
  const auto lie = direct_sum(g1, g2);
  const auto report = verify(lie, omega, rho);
  EXPECT_FALSE(report.d_rho_zero);
  EXPECT_EQ(report.d_rho, oracle::d(lie, rho));
}

TEST(TypeI, RejectsBadInput) {
  EXPECT_THROW(ortho_type_I(catalog("r3"), catalog("su2"), 1, 1), std::invalid_argument);
  EXPECT_THROW(ortho_type_I(catalog("su2"), catalog("su2"), 0, 0), std::invalid_argument);
}

TEST(TypeI, CriterionMatchesClosureOverUnimodularPairs) {
  const std::vector<std::pair<Scalar, Scalar>> xis = {{1, 1}, {0, 1}, {1, 0}, {2, 1}, {1, -1}, {rational(1, 2), 3}};
  const auto algebras = unimodular_catalog();
  int closed = 0;
  for (const auto& g1 : algebras)
    for (const auto& g2 : algebras) {
      const auto lie = direct_sum(g1, g2);
      for (const auto& [x1, x2] : xis) {
        auto [omega, rho] = ortho_type_I(g1, g2, x1, x2);
        const auto report = verify(lie, omega, rho);
        EXPECT_TRUE(report.d_omega2_zero);
        EXPECT_TRUE(report.compatible);
        EXPECT_EQ(report.structure.kind, StructureKind::SU3);
        EXPECT_EQ(report.d_rho_zero, type_I_criterion(g1, g2, x1, x2)) << g1.name() << "+" << g2.name();
        closed += report.d_rho_zero;
      }
    }
  EXPECT_GT(closed, 0);
}

TEST(TypeI, ScaledCopiesSatisfyTheCriterion) {
  const auto g = catalog("sl2");
  const auto scaled = g.change_basis([] {
    Matrix<Scalar> a(3, 3);
    for (int i = 0; i < 3; ++i) a(i, i) = 2;
    return a;
  }());
  // Scaling the coframe by 2 halves the constants, so xi1 c1 = xi2 c2 needs xi = (2, 1).
  EXPECT_TRUE(type_I_criterion(scaled, g, 2, 1));
  EXPECT_FALSE(type_I_criterion(scaled, g, 1, 2));
  auto [omega, rho] = ortho_type_I(scaled, g, 2, 1);
  EXPECT_TRUE(verify(direct_sum(scaled, g), omega, rho).half_flat());
}

TEST(TypeII, CaseAPairsTwoCopiesOfEOneOne) {
  OrthoAnsatz p;
  p.tag = OrthoCase::IIa;
  p.a = rational(3, 5);
  p.xi2 = 1;
  p.p = 1;
  p.q = 0;
  const auto fam = ortho_type_II(p);
  EXPECT_EQ(fam.params.b, rational(4, 5));
  const auto report = verify(fam.algebra, fam.omega, fam.rho);
  EXPECT_TRUE(report.half_flat());
  EXPECT_EQ(report.structure.kind, StructureKind::SU3);
  EXPECT_EQ(classify(fam.g1).tag, "e11");
  EXPECT_EQ(classify(fam.g2).tag, "e11");
  Matrix<Scalar> expected(3, 3);
  expected(0, 0) = fam.params.t;
  expected(0, 1) = expected(1, 0) = -fam.params.p;
  expected(1, 1) = -fam.params.t;
  EXPECT_EQ(milnor_L(fam.g1), expected);
}

TEST(TypeII, CaseAWithVanishingFreeConstantsIsAbelian) {
  OrthoAnsatz p;
  p.tag = OrthoCase::IIa;
  p.a = rational(5, 13);
  p.xi2 = 2;
  const auto fam = ortho_type_II(p);
  EXPECT_TRUE(is_abelian(fam.algebra));
  EXPECT_TRUE(verify(fam.algebra, fam.omega, fam.rho).half_flat());
}

TEST(TypeII, CaseASweepStaysHalfFlat) {
  for (const Scalar& a : {rational(3, 5), rational(-3, 5), rational(5, 13), rational(8, 17)})
    for (const Scalar& xi2 : {Scalar(1), Scalar(-2), rational(1, 3)})
      for (auto [pp, qq] : {std::pair{1, 0}, {0, 1}, {2, -1}, {-1, 3}}) {
        OrthoAnsatz p;
        p.tag = OrthoCase::IIa;
        p.a = a;
        p.xi2 = xi2;
        p.p = pp;
        p.q = qq;
        const auto fam = ortho_type_II(p);
        const auto report = verify(fam.algebra, fam.omega, fam.rho);
        EXPECT_TRUE(report.half_flat()) << a << " " << xi2 << " " << pp << " " << qq;
        EXPECT_EQ(classify(fam.g1).tag, "e11");
        EXPECT_EQ(classify(fam.g2).tag, "e11");
      }
}

TEST(TypeII, CaseBDeterminantZeroGivesEuclideanPairing) {
  // D = -4(q(q+1) + r^2) vanishes at q = -1/2, r = 1/2 with p = q + 1.
  OrthoAnsatz p;
  p.tag = OrthoCase::IIb;
  p.a = rational(3, 5);
  p.q = rational(-1, 2);
  p.p = p.q + 1;
  p.r = rational(1, 2);
  const auto fam = ortho_type_II(p);
  EXPECT_TRUE(verify(fam.algebra, fam.omega, fam.rho).half_flat());
  const auto c1 = classify(fam.g1), c2 = classify(fam.g2);
  EXPECT_EQ(c1.tag, "e2");
  EXPECT_EQ(c2.tag, "r2R");
  ASSERT_TRUE(c2.determinant);
  EXPECT_EQ(*c2.determinant, 0);
}

TEST(TypeII, CaseBSweepMatchesDeterminantFormula) {
  for (auto [qq, rr] : {std::pair{rational(1, 2), rational(1, 3)}, {rational(-1, 3), rational(1, 5)}, {Scalar(2), Scalar(1)}}) {
    OrthoAnsatz p;
    p.tag = OrthoCase::IIb;
    p.a = rational(5, 13);
    p.q = qq;
    p.p = qq + 1;
    p.r = rr;
    const auto fam = ortho_type_II(p);
    EXPECT_TRUE(verify(fam.algebra, fam.omega, fam.rho).half_flat());
    const auto c2 = classify(fam.g2);
    ASSERT_TRUE(c2.determinant);
    EXPECT_EQ(*c2.determinant, -4 * (qq * (qq + 1) + rr * rr));
  }
}

TEST(TypeII, CaseCBothBranches) {
  for (const Scalar& xi2 : {Scalar(0), Scalar(1), rational(-1, 2)}) {
    OrthoAnsatz p;
    p.tag = OrthoCase::IIc;
    p.a = 1;
    p.xi2 = xi2;
    // c_45^6 = xi2 s + xi2 p + q + r = 0 by choice of q.
    p.r = 1;
    p.p = 2;
    p.s = rational(1, 3);
    p.q = -(xi2 * p.s + xi2 * p.p + p.r);
    const auto fam = ortho_type_II(p);
    EXPECT_EQ(fam.params.b, 0);
    EXPECT_TRUE(verify(fam.algebra, fam.omega, fam.rho).half_flat()) << xi2;
  }
  OrthoAnsatz bad;
  bad.tag = OrthoCase::IIc;
  bad.a = 1;
  bad.xi2 = 1;
  bad.r = 1;
  bad.p = 3;
  EXPECT_THROW(ortho_type_II(bad), InvalidLieAlgebra);
}

TEST(TypeII, RejectsOutOfDomainParameters) {
  OrthoAnsatz p;
  p.tag = OrthoCase::IIa;
  p.a = rational(1, 2);
  p.xi2 = 1;
  EXPECT_THROW(ortho_type_II(p), std::invalid_argument);
  p.a = rational(3, 5);
  p.xi2 = 0;
  EXPECT_THROW(ortho_type_II(p), std::invalid_argument);
  p.tag = OrthoCase::IIb;
  p.xi2 = 1;
  EXPECT_THROW(ortho_type_II(p), std::invalid_argument);
  p.tag = OrthoCase::IIc;
  EXPECT_THROW(ortho_type_II(p), std::invalid_argument);
  p.a = 0;
  EXPECT_THROW(ortho_type_II(p), std::invalid_argument);
}

TEST(Para, UnimodularSummandsGiveHalfFlatSlThree) {
  const KForm omega = F("e1^f1 + e2^f2 + e3^f3");
  const auto pair = para_eigenspace_pair(catalog("su2"), catalog("e11"), omega);
  EXPECT_EQ(pair.rho, F("e1^e2^e3 + f1^f2^f3"));
  EXPECT_TRUE(pair.report.half_flat());
  EXPECT_EQ(pair.report.structure.kind, StructureKind::SL3R);
}

TEST(Para, NonUnimodularSummandBreaksOmegaSquare) {
  const auto pair = para_eigenspace_pair(catalog("su2"), catalog("r2R"), F("e1^f1 + e2^f2 + e3^f3"));
  EXPECT_TRUE(pair.report.d_rho_zero);
  EXPECT_FALSE(pair.report.d_omega2_zero);
  EXPECT_FALSE(pair.report.half_flat());
}

TEST(Para, AbelianSumIsHalfFlat) {
  EXPECT_TRUE(para_eigenspace_pair(catalog("R3"), catalog("R3"), F("e1^f2 + e2^f3 + e3^f1")).report.half_flat());
}

TEST(Para, VerdictTracksUnimodularityOverCatalog) {
  const KForm omega = F("e1^f1 + e2^f2 - e3^f3 + e1^f2");
  const auto all = oracle::catalog_instances();
  for (const auto& g1 : all)
    for (const auto& g2 : all) {
      const auto pair = para_eigenspace_pair(g1, g2, omega);
      EXPECT_EQ(pair.report.structure.kind, StructureKind::SL3R);
      EXPECT_EQ(pair.report.half_flat(), is_unimodular(g1) && is_unimodular(g2)) << g1.name() << "+" << g2.name();
    }
}

TEST(Para, RejectsDegenerateOrUnmixedOmega) {
  const auto g = catalog("su2");
  EXPECT_THROW(para_eigenspace_pair(g, g, F("e1^f1 + e2^f2")), std::invalid_argument);
  EXPECT_THROW(para_eigenspace_pair(g, g, F("e1^e2 + e3^f3 + f1^f2")), std::invalid_argument);
}

TEST(Split, RecoversFactors) {
  const auto lie = sum("sl2", "r3");
  const auto parts = split_direct_sum(lie);
  ASSERT_TRUE(parts);
  EXPECT_EQ(classify(parts->first).tag, "sl2");
  EXPECT_EQ(classify(parts->second).tag, "r3");
  OrthoAnsatz p;
  p.tag = OrthoCase::IIa;
  p.a = rational(3, 5);
  p.xi2 = 1;
  p.p = 1;
  EXPECT_TRUE(split_direct_sum(ortho_type_II(p).algebra));
}
