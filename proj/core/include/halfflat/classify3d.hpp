#pragma once

// Bianchi classification of three-dimensional Lie algebras through Milnor's
// endomorphism L (unimodular case) and the determinant D of ad_X on the
// unimodular kernel (non-unimodular case).

#include <optional>
#include <string>

#include "halfflat/liealg.hpp"
#include "halfflat/linalg.hpp"

namespace halfflat {

struct BianchiClass {
  std::string tag;       // catalog tag, e.g. "e11"
  std::string display;   // e.g. "e(1,1)"
  std::string bianchi;   // e.g. "VI_0"
  bool unimodular = false;
  std::optional<Inertia> eigen_signs;   // unimodular: signs of the eigenvalues of L
  std::optional<Scalar> determinant;    // non-unimodular: D = det(L~)
  bool l_tilde_identity = false;
  std::optional<Scalar> mu;             // recovered family parameter when rational

  /// One-line invariant, "(+,-,0)" or "D=8/9".
  std::string invariant() const;
};

/// The matrix L with [u, v] = L (u x v) for the declared basis taken as
/// orthonormal, oriented so that e_1 x e_2 = -e_3 (this choice makes the
/// standard su(2) bracket give L = Id).
Matrix<Scalar> milnor_L(const LieAlgebra& lie);

/// Restriction of ad_X to the unimodular kernel, tr(ad_X) = 2, in a basis of
/// the kernel. Throws InvalidLieAlgebra unless the kernel is two-dimensional
/// and abelian, std::invalid_argument for unimodular input.
Matrix<Scalar> unimodular_kernel_action(const LieAlgebra& lie);

BianchiClass classify(const LieAlgebra& lie);

}  // namespace halfflat
