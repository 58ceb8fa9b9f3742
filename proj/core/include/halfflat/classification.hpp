#pragma once

// The 78 unordered pairs of the 12 classes of three-dimensional Lie
// algebras, resolved by obstruction verdicts and appendix witnesses.

#include <optional>
#include <string>
#include <vector>

#include "halfflat/appendix.hpp"
#include "halfflat/obstruct.hpp"

namespace halfflat {

struct FactorClass {
  std::string id;   // su2 sl2 e2 e11 h3 R3 r2R r3 r31 r3mu+ r3mu- r3pmu
  std::string tag;  // catalog tag
  std::vector<std::optional<Scalar>> mus;
  bool unimodular = false;
  bool solvable = false;

  LieAlgebra instance(const std::optional<Scalar>& mu) const;
};

const std::vector<FactorClass>& factor_classes();
const FactorClass& factor_class(std::string_view id);

struct PairClass {
  const FactorClass* a = nullptr;
  const FactorClass* b = nullptr;
  std::string label() const;
};

std::vector<PairClass> pair_classes();

/// Direct sums with a half-flat SU(3)-structure: unimodular, not solvable,
/// or e(2) + r2 + R, e(1,1) + r2 + R.
bool admits_su3(const PairClass& pair);

/// Class id of an appendix row's second factor ("r3mu" splits by the sign of mu).
std::string class_id(const std::string& tag, const std::optional<Scalar>& mu);

enum class PairStatus { Obstructed, Witnessed, Gap, Overlap };
std::string to_string(PairStatus s);

struct PairResolution {
  PairClass pair;
  int instances = 0;
  int obstructed_instances = 0;
  int witnessed_instances = 0;
  std::vector<std::string> refined;  // refined test tags used
  std::vector<std::string> witnesses;
  /// Instances witnessed only by appendix::typo_candidate.
  int corrected_witnesses = 0;
  PairStatus status = PairStatus::Gap;

  bool matches_classification() const;
};

PairResolution resolve(const PairClass& pair, const std::vector<appendix::Row>& corpus);

}  // namespace halfflat
