#include "halfflat/stable.hpp"

namespace halfflat {

std::string to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::SU3: return "SU(3)";
    case StructureKind::SU21: return "SU(2,1)";
    case StructureKind::SU12: return "SU(1,2)";
    case StructureKind::SU03: return "SU(0,3)";
    case StructureKind::SL3R: return "SL(3,R)";
    case StructureKind::NotStable: return "NotStable";
    case StructureKind::NotCompatible: return "NotCompatible";
    case StructureKind::NotNormalizable: return "NotNormalizable";
  }
  return "unknown";
}

bool StructureType::is_stabilizer_kind() const {
  switch (kind) {
    case StructureKind::SU3:
    case StructureKind::SU21:
    case StructureKind::SU12:
    case StructureKind::SU03:
    case StructureKind::SL3R:
      return true;
    default:
      return false;
  }
}

std::string StructureType::str() const {
  return to_string(kind) + " (" + std::to_string(signature.positive) + "," + std::to_string(signature.negative) +
         "," + std::to_string(signature.zero) + ")";
}

StructureType classify_structure(int lambda_sign, const Inertia& sig) {
  StructureType out{StructureKind::NotNormalizable, sig};
  if (sig.zero != 0 || lambda_sign == 0) return out;
  if (lambda_sign > 0) {
    if (sig.positive == 3 && sig.negative == 3) out.kind = StructureKind::SL3R;
    return out;
  }
  if (sig.positive % 2 || sig.negative % 2) return out;
  switch (sig.positive / 2) {
    case 3: out.kind = StructureKind::SU3; break;
    case 2: out.kind = StructureKind::SU21; break;
    case 1: out.kind = StructureKind::SU12; break;
    case 0: out.kind = StructureKind::SU03; break;
  }
  return out;
}

QuadExt j_apply_oneform(const KForm& rho, const KForm& alpha, const Vector& v) {
  if (alpha.degree() != 1) throw std::invalid_argument("j_apply_oneform expects a one-form");
  const Scalar lambda = lambda_of(rho);
  if (is_zero(lambda)) throw NotStableError("three-form is not stable (lambda = 0)");
  const Scalar top = volume_ratio(wedge(wedge(alpha, contract(v, rho)), rho)).value;
  return QuadExt(top) / QuadExt::sqrt(abs(lambda));
}

}  // namespace halfflat
