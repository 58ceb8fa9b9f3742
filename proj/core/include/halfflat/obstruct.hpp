#pragma once

// Non-existence machinery for half-flat SU(3)-structures: coherent
// splittings g^* = V + W with dim V = 2, the closed-form conditions
//   Z^3 in L^2 V ^ W + V ^ L^2 W,   Z^4 in L^2 V ^ L^2 W + V ^ L^3 W,
// two refined obstructions, and randomized lambda >= 0 scans.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfflat/liealg.hpp"

namespace halfflat {

enum class ObstructionVerdict { NoHalfFlatSU3, Inconclusive };
std::string to_string(ObstructionVerdict v);

struct ObstructionReport {
  std::vector<KForm> v;  // two one-forms
  std::vector<KForm> w;  // four one-forms completing a coframe
  bool coherent = false;
  bool h03 = false;
  bool h04 = false;
  std::size_t rank3 = 0;  // dim d(L^3 W)
  std::size_t rank4 = 0;  // dim d(L^4 W)
  ObstructionVerdict verdict = ObstructionVerdict::Inconclusive;
  std::optional<std::string> refined;  // "h3+r2R" or "r2R+R3" when a refined test decided
  std::string detail;
};

/// A candidate V = span(alpha1, alpha2) with alpha_i in g_i^*, as six-dimensional one-forms.
using SplittingCandidate = std::pair<KForm, KForm>;

/// Closed one-forms alpha of a three-dimensional algebra with im d in alpha ^ g^*.
/// Empty unless the algebra is solvable.
Subspace splitting_forms(const LieAlgebra& factor);

/// Candidates for coherent splittings of a direct sum, one per pair of
/// projective candidates of the factors (basis vectors of each candidate
/// space, plus pairwise sums and differences when it has dimension > 1).
/// Throws std::invalid_argument when lie does not split as e^1..e^3 + f^1..f^3.
std::vector<SplittingCandidate> coherent_splittings(const LieAlgebra& lie);

/// dV in L^2 V and dW in L^2 V + V ^ W.
bool is_coherent(const LieAlgebra& lie, const std::vector<KForm>& v, const std::vector<KForm>& w);

/// Completes V by standard basis one-forms to a coframe.
std::vector<KForm> complement(const std::vector<KForm>& v);

/// Exact test of both conditions for V = span(alpha1, alpha2) and the
/// standard complement W. Throws std::invalid_argument for a non-coherent
/// splitting.
ObstructionReport check_obstruction(const LieAlgebra& lie, const KForm& alpha1, const KForm& alpha2);

/// The two conditions for an arbitrary decomposition given by a coframe
/// whose first two rows span V and whose last four rows span W.
std::pair<bool, bool> obstruction_conditions(const LieAlgebra& lie, const Matrix<Scalar>& coframe);

/// Refined test behind the non-existence on h3 + r2 + R, run on any algebra:
/// (1) f^1 ^ sigma lies in span{f^1 e^12 f^23, f^1 e^123 f^3} for all sigma in Z^4,
/// (2) (rho1, rho2) -> f^1 ^ (v _| rho1) ^ rho2 + f^1 ^ (v _| rho2) ^ rho1
///     vanishes on Z^3 x Z^3 for v in {e_3, f_2}.
bool refined_h3_r2R_raw(const LieAlgebra& lie);
/// Throws std::invalid_argument unless lie is h3 + r2 + R in the standard basis.
bool refined_h3_r2R(const LieAlgebra& lie);

/// Refined test behind the non-existence on r2 + R + R^3, run on any
/// algebra: dim Z^1 = 5 and K_rho(e_2) is a multiple of e_2 for every
/// closed rho (checked on the polarization over a basis of Z^3, which is
/// exact, and on random combinations).
bool refined_r2R_R3_raw(const LieAlgebra& lie, std::uint64_t seed = 7, int samples = 20);
/// Throws std::invalid_argument unless lie is r2 + R + R^3 in the standard basis.
bool refined_r2R_R3(const LieAlgebra& lie, std::uint64_t seed = 7, int samples = 20);

/// alpha ^ (v _| rho) ^ rho = 0 for all alpha in V and v in Ann(V).
bool v_is_j_invariant(const KForm& rho, const std::vector<KForm>& v);

/// Full obstruction attempt on a direct sum: every coherent splitting
/// candidate, then the refined tests when the factors match them.
ObstructionReport obstruct(const LieAlgebra& lie);

struct LambdaScan {
  std::uint64_t seed = 0;
  int samples = 0;
  int negative = 0;
  std::optional<Scalar> min_lambda;
  std::optional<KForm> negative_witness;
  std::size_t closed_dimension = 0;
  /// Always set: the scan can falsify lambda >= 0 but cannot prove it.
  std::string note = "randomized falsification test, not a proof";

  bool all_nonnegative() const { return negative == 0; }
};

/// lambda of n random rational combinations of a basis of Z^3 with
/// coefficients in [-10, 10].
LambdaScan lambda_nonneg_scan(const LieAlgebra& lie, int samples, std::uint64_t seed);

/// True when V (first two coframe rows) violates one of the conditions:
/// some closed 3-form or 4-form has a non-zero L^3 W or L^4 W component.
bool subspace_defeated(const LieAlgebra& lie, const Matrix<Scalar>& coframe);

/// Samples random rational coframes and returns true when every sample
/// is defeated.
bool unimodular_no_splitting(const LieAlgebra& lie, int samples = 50, std::uint64_t seed = 11);

}  // namespace halfflat
