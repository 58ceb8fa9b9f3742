#pragma once

// Half-flat verdicts (d rho = 0, d omega^2 = 0 for a compatible stable pair)
// and constructive families of half-flat structures on direct sums.

#include <optional>
#include <string>
#include <utility>

#include "halfflat/liealg.hpp"
#include "halfflat/stable.hpp"

namespace halfflat {

template <class F>
struct BasicHalfFlatReport {
  bool d_rho_zero = false;
  bool d_omega2_zero = false;
  bool compatible = false;
  StructureType structure;
  std::optional<F> lambda;
  std::optional<F> norm_c4;
  std::optional<Matrix<F>> g_raw;
  BasicForm<F> d_rho{4};
  BasicForm<F> d_omega2{5};
  /// A pair of one-forms spanning an isotropic J-invariant plane, when one was checked.
  std::optional<std::pair<KForm, KForm>> isotropic_witness;

  bool half_flat() const { return d_rho_zero && d_omega2_zero && compatible && structure.is_stabilizer_kind(); }
};

using HalfFlatReport = BasicHalfFlatReport<Scalar>;

template <class F>
BasicHalfFlatReport<F> verify(const LieAlgebra& lie, const BasicForm<F>& omega, const BasicForm<F>& rho) {
  if (lie.dim() != 6) throw std::invalid_argument("verify expects a six-dimensional Lie algebra");
  if (omega.degree() != 2 || rho.degree() != 3) throw std::invalid_argument("verify expects a 2-form and a 3-form");
  BasicHalfFlatReport<F> r;
  r.d_rho = lie.d(rho);
  r.d_omega2 = lie.d(wedge(omega, omega));
  r.d_rho_zero = r.d_rho.is_zero();
  r.d_omega2_zero = r.d_omega2.is_zero();
  r.compatible = is_compatible(omega, rho);
  const Matrix<F> k = k_matrix(rho);
  const F lambda = lambda_of(k);
  r.lambda = lambda;
  r.structure = structure_type(omega, rho);
  const bool stable = !is_zero(lambda) && !is_zero(phi_of(omega));
  if (stable) r.norm_c4 = normalization_scale(omega, rho).c4;
  if (stable && r.compatible) r.g_raw = induced_metric_raw(omega, k).g_hat;
  return r;
}

/// Checks that span{alpha, beta} is J-invariant (alpha o K, beta o K lie in
/// the span) and isotropic for the raw metric on one-forms, i.e. the inverse
/// of G vanishes on the plane. Fills isotropic_witness on success.
bool check_isotropic_invariant_plane(HalfFlatReport& report, const KForm& rho, const KForm& alpha, const KForm& beta);

/// The (3,0)-form pieces psi_0, phi_0 of the type I ansatz for
/// omega = e^1 f^1 + e^2 f^2 + e^3 f^3.
std::pair<KForm, KForm> type_I_forms();

/// omega = sum e^i f^i and psi = xi1 psi_0 - xi2 phi_0 on g1 + g2.
/// Throws std::invalid_argument for non-unimodular factors or xi = (0, 0).
std::pair<KForm, KForm> ortho_type_I(const LieAlgebra& g1, const LieAlgebra& g2, const Scalar& xi1, const Scalar& xi2);

/// True when the type I ansatz on g1 + g2 is closed: xi1 c1_{jk}^x = xi2 c2_{yz}^w
/// for every matching pair of cyclic index pairs. With both xi nonzero this
/// says the constants agree up to xi2/xi1; with one xi zero the other factor
/// must be abelian.
bool type_I_criterion(const LieAlgebra& g1, const LieAlgebra& g2, const Scalar& xi1, const Scalar& xi2);

enum class OrthoCase { I, IIa, IIb, IIc };

/// Parameters of the type II ansatz
///   omega = a e^12 + b e^1 f^1 + b e^2 f^2 + e^3 f^3 - a f^12,  b = sqrt(1 - a^2),
///   psi = psi_0 - xi2 phi_0.
/// Case IIa: p = c_13^1, q = c_56^4 free; s = c_46^4 and t = c_23^1 derived.
/// Case IIb (xi2 = 0): p = c_13^2, q = c_23^1, r = c_13^1 free.
/// Case IIc (a = 1): r = c_13^1, p = c_13^2, s = c_46^4, q = c_56^4 free.
/// Structure constants use 1-based indices with f^i = e^{i+3}.
struct OrthoAnsatz {
  OrthoCase tag = OrthoCase::IIa;
  Scalar a = 0;
  Scalar b = 0;
  Scalar xi1 = 1;
  Scalar xi2 = 0;
  Scalar p = 0, q = 0, r = 0, s = 0, t = 0;
};

struct OrthoFamily {
  LieAlgebra algebra;
  KForm omega;
  KForm rho;
  OrthoAnsatz params;  // with derived b, s, t filled in
  LieAlgebra g1;
  LieAlgebra g2;
};

std::pair<KForm, KForm> type_II_forms(const Scalar& a, const Scalar& b);

/// Throws std::invalid_argument when the parameters are outside the case's
/// domain or 1 - a^2 is not a rational square, InvalidLieAlgebra when a IIc
/// choice violates the Jacobi identity.
OrthoFamily ortho_type_II(const OrthoAnsatz& params);

struct ParaPair {
  KForm omega;
  KForm rho;
  HalfFlatReport report;
};

/// rho = e^123 + f^123 with g1, g2 the eigenspaces of the para-complex
/// structure; omega must lie in g1^* (x) g2^* and be non-degenerate.
ParaPair para_eigenspace_pair(const LieAlgebra& g1, const LieAlgebra& g2, const KForm& omega);

/// Splits a direct sum's six-dimensional algebra back into its factors when
/// d preserves {e^1, e^2, e^3} and {f^1, f^2, f^3}.
std::optional<std::pair<LieAlgebra, LieAlgebra>> split_direct_sum(const LieAlgebra& lie);

}  // namespace halfflat
