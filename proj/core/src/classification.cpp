#include "halfflat/classification.hpp"

#include <algorithm>
#include <map>

namespace halfflat {

namespace {

std::vector<std::optional<Scalar>> mus_of(std::initializer_list<Scalar> values) {
  std::vector<std::optional<Scalar>> out;
  for (const auto& v : values) out.emplace_back(v);
  return out;
}

bool same_pair(const std::string& x1, const std::string& x2, const std::string& y1, const std::string& y2) {
  return (x1 == y1 && x2 == y2) || (x1 == y2 && x2 == y1);
}

}  // namespace

LieAlgebra FactorClass::instance(const std::optional<Scalar>& mu) const { return mu ? catalog(tag, mu) : catalog(tag); }

const std::vector<FactorClass>& factor_classes() {
  static const std::vector<FactorClass> classes = [] {
    const std::vector<std::optional<Scalar>> none = {std::nullopt};
    std::vector<FactorClass> c = {
        {"su2", "su2", none, true, false},
        {"sl2", "sl2", none, true, false},
        {"e2", "e2", none, true, true},
        {"e11", "e11", none, true, true},
        {"h3", "h3", none, true, true},
        {"R3", "R3", none, true, true},
        {"r2R", "r2R", none, false, true},
        {"r3", "r3", none, false, true},
        {"r31", "r31", none, false, true},
        {"r3mu+", "r3mu", mus_of({rational(1, 4), rational(1, 2), rational(3, 4)}), false, true},
        {"r3mu-", "r3mu", mus_of({rational(-3, 4), rational(-1, 2), rational(-1, 4)}), false, true},
        {"r3pmu", "r3pmu", mus_of({rational(1, 4), rational(1, 2), rational(3, 4), Scalar(1), Scalar(2)}), false, true},
    };
    return c;
  }();
  return classes;
}

const FactorClass& factor_class(std::string_view id) {
  for (const auto& c : factor_classes())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown factor class '" + std::string(id) + "'");
}

std::string PairClass::label() const { return a->id + "+" + b->id; }

std::vector<PairClass> pair_classes() {
  std::vector<PairClass> out;
  const auto& c = factor_classes();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i; j < c.size(); ++j) out.push_back({&c[i], &c[j]});
  return out;
}

bool admits_su3(const PairClass& p) {
  if (p.a->unimodular && p.b->unimodular) return true;
  if (!p.a->solvable || !p.b->solvable) return true;
  return same_pair(p.a->id, p.b->id, "e2", "r2R") || same_pair(p.a->id, p.b->id, "e11", "r2R");
}

std::string class_id(const std::string& tag, const std::optional<Scalar>& mu) {
  if (tag != "r3mu") return tag;
  if (*mu == 1) return "r31";
  return *mu > 0 ? "r3mu+" : "r3mu-";
}

std::string to_string(PairStatus s) {
  switch (s) {
    case PairStatus::Obstructed:
      return "obstructed";
    case PairStatus::Witnessed:
      return "witnessed";
    case PairStatus::Gap:
      return "gap";
    case PairStatus::Overlap:
      return "overlap";
  }
  return "?";
}

bool PairResolution::matches_classification() const {
  if (status == PairStatus::Gap || status == PairStatus::Overlap) return false;
  return (status == PairStatus::Witnessed) == admits_su3(pair);
}

PairResolution resolve(const PairClass& pair, const std::vector<appendix::Row>& corpus) {
  PairResolution out;
  out.pair = pair;
  for (const auto& mu_a : pair.a->mus)
    for (const auto& mu_b : pair.b->mus) {
      ++out.instances;
      const LieAlgebra lie = direct_sum(pair.a->instance(mu_a), pair.b->instance(mu_b));
      const ObstructionReport report = obstruct(lie);
      if (report.verdict == ObstructionVerdict::NoHalfFlatSU3) {
        ++out.obstructed_instances;
        if (report.refined && std::find(out.refined.begin(), out.refined.end(), *report.refined) == out.refined.end())
          out.refined.push_back(*report.refined);
      }
      const std::optional<Scalar>& mu = mu_a ? mu_a : mu_b;
      bool witnessed = false, corrected = false;
      for (const auto& row : corpus) {
        if (!same_pair(class_id(row.g1, row.mu), class_id(row.g2, row.mu), pair.a->id, pair.b->id)) continue;
        if (row.mu && mu && *row.mu != *mu) continue;
        if (appendix::check_row(row).passed()) {
          witnessed = true;
          out.witnesses.push_back(row.label());
          break;
        }
        if (auto fixed = appendix::typo_candidate(row); fixed && appendix::check_row(*fixed).passed()) {
          corrected = true;
          out.witnesses.push_back(row.label() + " (corrected)");
        }
      }
      if (witnessed || corrected) ++out.witnessed_instances;
      if (!witnessed && corrected) ++out.corrected_witnesses;
    }
  const bool obstructed = out.obstructed_instances == out.instances;
  const bool witnessed = out.witnessed_instances == out.instances;
  if (obstructed && witnessed) {
    out.status = PairStatus::Overlap;
  } else if (obstructed && out.witnessed_instances == 0) {
    out.status = PairStatus::Obstructed;
  } else if (witnessed && out.obstructed_instances == 0) {
    out.status = PairStatus::Witnessed;
  } else {
    out.status = out.obstructed_instances && out.witnessed_instances ? PairStatus::Overlap : PairStatus::Gap;
  }
  return out;
}

}  // namespace halfflat
