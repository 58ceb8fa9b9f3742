#pragma once

// Regression corpus of explicit half-flat SU(3)-structures on direct sums,
// transcribed with printed irrational prefactors stripped. Forms and metrics
// live over Q(sqrt D) because one family needs sqrt(2 mu + 1).

#include <optional>
#include <string>
#include <vector>

#include "halfflat/halfflat.hpp"
#include "halfflat/quadext.hpp"

namespace halfflat::appendix {

using QForm = BasicForm<QuadExt>;

struct Row {
  int table = 0;
  int index = 0;  // row number inside its table, 1-based
  std::string g1;
  std::string g2;
  std::optional<Scalar> mu;
  QForm omega{2};
  QForm rho{3};
  /// Printed metric without its prefactor, in the basis e1 e2 e3 f1 f2 f3.
  Matrix<QuadExt> metric;
  /// Fourth power of the stripped prefactor of rho.
  Scalar c4 = 1;
  /// Square of the stripped prefactor of the printed metric.
  Scalar metric_scale_sq = 1;

  LieAlgebra algebra() const;
  std::string label() const;
};

/// Rows of one table. Parametric rows are instantiated at mu when given and
/// legal, otherwise at every legal value of the sample set.
std::vector<Row> rows(int table, std::optional<Scalar> mu = std::nullopt);
std::vector<Row> all_rows();

struct RowCheck {
  BasicHalfFlatReport<QuadExt> report;
  bool lambda_negative = false;
  bool positive_definite = false;
  bool c4_match = false;
  bool metric_match = false;
  /// k with G_hat = k * printed metric, when one exists.
  std::optional<QuadExt> metric_factor;
  /// Empty on success, otherwise a description of the first failing check.
  std::string residual;

  bool passed() const { return residual.empty(); }
};

RowCheck check_row(const Row& row);

/// Table 5 row 7 as printed has omega ^ rho = R e^123 f^23 with
/// R = 2 sqrt(2 mu + 1) / (mu + 1)^2. Returns the row with the e^123
/// coefficient of rho lowered from 2R to R, which verifies completely;
/// nullopt for every other row.
std::optional<Row> typo_candidate(const Row& row);

}  // namespace halfflat::appendix
