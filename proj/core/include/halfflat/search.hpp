#pragma once

// Floating-point search for half-flat structures. Closedness of rho is solved
// exactly (rho ranges over a basis of closed three-forms); the quadratic
// equations and the signature of the metric enter a least-squares penalty
// minimized by Levenberg-Marquardt from random starts.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "halfflat/liealg.hpp"
#include "halfflat/stable.hpp"

namespace halfflat {

struct SearchOptions {
  int restarts = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  double margin = 1e-4;       // acceptance margin on the normalized eigenvalues
  double hinge_target = 1e-2;  // the penalty pushes eigenvalues and lambda past this
  int max_evaluations = 400;  // per restart
};

struct SearchResiduals {
  double d_rho = 0;
  double d_omega2 = 0;
  double omega_rho = 0;
  double lambda = 0;
  /// Smallest |eigenvalue| of the raw metric divided by its Frobenius norm.
  double min_eig = 0;
};

struct SearchResult {
  bool found = false;
  StructureKind target = StructureKind::SU3;
  std::vector<double> omega;  // coordinates over monomials(2)
  std::vector<double> rho;    // coordinates over monomials(3)
  SearchResiduals residuals;
  double penalty = 0;
  std::uint64_t seed = 0;
  int restarts_used = 0;
  std::optional<std::pair<KForm, KForm>> rationalized;
};

/// Targets: SU3, SU12 (SU21 is treated as the same up to overall sign) and SL3R.
SearchResult find_halfflat(const LieAlgebra& lie, StructureKind target, const SearchOptions& opts = {});

/// Rounds both forms by continued fractions (after scaling the largest
/// coefficient of each to 1) and returns the exact pair when it verifies as a
/// half-flat structure of the target kind.
std::optional<std::pair<KForm, KForm>> rationalize(const SearchResult& result, const LieAlgebra& lie, long max_den);

/// Best rational approximation with denominator at most max_den.
Scalar best_rational(double x, long max_den);

// Float evaluation of the stable-form invariants, exposed for validation
// against the exact path. Coordinates are over monomials(2) and monomials(3).

struct FloatInvariants {
  std::vector<double> k;  // row-major 6x6
  double lambda = 0;
  double phi_omega = 0;
  std::vector<double> g_raw;  // row-major 6x6, eps * s * omega(., K .)
};

FloatInvariants float_invariants(const std::vector<double>& omega, const std::vector<double>& rho);

/// Penalty model of one search problem.
class PenaltyModel {
 public:
  PenaltyModel(const LieAlgebra& lie, StructureKind target, double hinge_target);

  int parameters() const { return 15 + static_cast<int>(closed_basis_.size()); }
  int residual_count() const;
  std::vector<double> residuals(const std::vector<double>& x) const;
  /// Row-major residual_count() x parameters() Jacobian.
  std::vector<double> jacobian(const std::vector<double>& x) const;
  double penalty(const std::vector<double>& x) const;
  std::vector<double> gradient(const std::vector<double>& x) const;

  std::vector<double> rho_coordinates(const std::vector<double>& x) const;

 private:
  template <class T>
  std::vector<T> evaluate(const std::vector<T>& x) const;

  LieAlgebra lie_;
  StructureKind target_;
  double margin_;
  std::vector<std::vector<double>> closed_basis_;  // coordinates of Z^3 basis
  std::vector<std::vector<double>> d4_;            // d on 4-forms, 6 x 15
};

}  // namespace halfflat
