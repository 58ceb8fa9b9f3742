#include "halfflat/halfflat.hpp"

#include <array>
#include <map>
#include <tuple>

#include "halfflat/structure_file.hpp"

namespace halfflat {

namespace {

const std::vector<std::string>& names() {
  static const std::vector<std::string> basis = default_basis(6);
  return basis;
}

KForm form(std::string_view text) { return parse_form(text, names()); }

// Builds the six-dimensional algebra from constants c_ij^k (1-based, i < j).
using Constants = std::map<std::tuple<int, int, int>, Scalar>;

LieAlgebra from_constants(const Constants& c, std::string name) {
  std::vector<KForm> de(6, KForm(2));
  for (const auto& [key, value] : c) {
    const auto [i, j, k] = key;
    de[k - 1].add_term(static_cast<Mask>((1u << (i - 1)) | (1u << (j - 1))), value);
  }
  return LieAlgebra::from_differentials(6, std::move(de), std::move(name));
}

Vector covector(const KForm& alpha) {
  Vector v;
  v.fill(0);
  for (const auto& [m, c] : alpha.terms()) v[std::countr_zero(static_cast<unsigned>(m))] = c;
  return v;
}

// Zero-based cyclic pairs (2,3), (3,1), (1,2) of a three-dimensional factor.
constexpr std::array<std::array<int, 2>, 3> kCyclic = {{{1, 2}, {2, 0}, {0, 1}}};

}  // namespace

bool check_isotropic_invariant_plane(HalfFlatReport& report, const KForm& rho, const KForm& alpha, const KForm& beta) {
  if (!report.g_raw) return false;
  const Matrix<Scalar> k = k_matrix(rho);
  const Vector a = covector(alpha), b = covector(beta);
  Matrix<Scalar> span(2, 6);
  for (std::size_t j = 0; j < 6; ++j) {
    span(0, j) = a[j];
    span(1, j) = b[j];
  }
  if (rank(span) != 2) return false;
  for (const Vector* v : {&a, &b}) {
    Matrix<Scalar> ext(3, 6);
    for (std::size_t j = 0; j < 6; ++j) {
      ext(0, j) = a[j];
      ext(1, j) = b[j];
      Scalar img = 0;
      for (std::size_t i = 0; i < 6; ++i) img += (*v)[i] * k(i, j);
      ext(2, j) = img;
    }
    if (rank(ext) != 2) return false;
  }
  Matrix<Scalar> g_inv;
  try {
    g_inv = inverse(*report.g_raw);
  } catch (const std::domain_error&) {
    return false;
  }
  auto pairing = [&g_inv](const Vector& x, const Vector& y) {
    Scalar acc = 0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) acc += x[i] * g_inv(i, j) * y[j];
    return acc;
  };
  if (!is_zero(pairing(a, a)) || !is_zero(pairing(a, b)) || !is_zero(pairing(b, b))) return false;
  report.isotropic_witness = std::make_pair(alpha, beta);
  return true;
}

std::pair<KForm, KForm> type_I_forms() {
  return {form("e1^e2^e3 - e1^f2^f3 - e2^f3^f1 - e3^f1^f2"), form("f1^f2^f3 - e1^e2^f3 - e3^e1^f2 - e2^e3^f1")};
}

std::pair<KForm, KForm> ortho_type_I(const LieAlgebra& g1, const LieAlgebra& g2, const Scalar& xi1, const Scalar& xi2) {
  if (g1.dim() != 3 || g2.dim() != 3) throw std::invalid_argument("type I ansatz needs two three-dimensional factors");
  if (!is_unimodular(g1) || !is_unimodular(g2)) throw std::invalid_argument("type I ansatz needs unimodular factors");
  if (is_zero(xi1) && is_zero(xi2)) throw std::invalid_argument("type I ansatz needs (xi1, xi2) != (0, 0)");
  auto [psi0, phi0] = type_I_forms();
  return {form("e1^f1 + e2^f2 + e3^f3"), KForm(xi1 * psi0) - KForm(xi2 * phi0)};
}

bool type_I_criterion(const LieAlgebra& g1, const LieAlgebra& g2, const Scalar& xi1, const Scalar& xi2) {
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const Scalar c1 = g1.structure_constant(kCyclic[x][0], kCyclic[x][1], y);
      const Scalar c2 = g2.structure_constant(kCyclic[y][0], kCyclic[y][1], x);
      if (xi1 * c1 != xi2 * c2) return false;
    }
  return true;
}

std::pair<KForm, KForm> type_II_forms(const Scalar& a, const Scalar& b) {
  KForm psi0 = KForm(b * form("f1^f2^f3 - e1^e2^f3")) + form("e1^e3^f2 - e2^e3^f1") +
               KForm(a * form("e1^f1^f3 + e2^f2^f3"));
  KForm phi0 = KForm(b * form("e3^f1^f2 - e1^e2^e3")) + form("e1^f2^f3 - e2^f1^f3") -
               KForm(a * form("e1^e3^f1 + e2^e3^f2"));
  return {psi0, phi0};
}

OrthoFamily ortho_type_II(const OrthoAnsatz& in) {
  OrthoAnsatz p = in;
  p.xi1 = 1;
  if (!(p.a > -1 && p.a <= 1) || is_zero(p.a)) throw std::invalid_argument("type II needs -1 < a <= 1 and a != 0");
  if (!rational_sqrt(Scalar(1 - p.a * p.a), p.b))
    throw std::invalid_argument("1 - a^2 is not a rational square (a must be Pythagorean)");
  Constants c;
  switch (p.tag) {
    case OrthoCase::IIa: {
      if (is_zero(p.xi2) || is_zero(p.b)) throw std::invalid_argument("case IIa needs xi2 != 0 and 0 < |a| < 1");
      const Scalar a2 = p.a * p.a, x2 = p.xi2 * p.xi2;
      const Scalar den = p.xi2 * (a2 + 1);
      p.s = (p.a * (x2 - 1) * p.q - (a2 + x2) * p.p) / den;
      p.t = -((x2 * a2 + 1) * p.q + p.a * (1 - x2) * p.p) / den;
      c[{1, 3, 1}] = p.p;
      c[{2, 3, 1}] = p.t;
      c[{1, 3, 2}] = p.t;
      c[{2, 3, 2}] = -p.p;
      c[{4, 6, 4}] = p.s;
      c[{5, 6, 4}] = p.q;
      c[{4, 6, 5}] = p.q;
      c[{5, 6, 5}] = -p.s;
      break;
    }
    case OrthoCase::IIb: {
      if (!is_zero(p.xi2) || is_zero(p.b)) throw std::invalid_argument("case IIb needs xi2 = 0 and 0 < |a| < 1");
      c[{1, 3, 1}] = p.r;
      c[{2, 3, 1}] = p.q;
      c[{1, 3, 2}] = p.p;
      c[{2, 3, 2}] = -p.r;
      c[{1, 2, 3}] = p.q - p.p;
      c[{4, 6, 4}] = p.a * p.q;
      c[{4, 6, 5}] = -p.a * p.r;
      c[{5, 6, 4}] = -p.a * p.r;
      c[{5, 6, 5}] = -p.a * p.p;
      break;
    }
    case OrthoCase::IIc: {
      if (p.a != 1) throw std::invalid_argument("case IIc needs a = 1");
      const Scalar& x = p.xi2;
      const Scalar c12_3 = x * p.r + p.s - x * p.q - p.p;
      const Scalar c45_6 = x * p.s + x * p.p + p.q + p.r;
      if (!is_zero(c12_3) && !is_zero(c45_6))
        throw InvalidLieAlgebra("case IIc violates the Jacobi identity unless c_12^3 = 0 or c_45^6 = 0");
      c[{1, 3, 1}] = p.r;
      c[{1, 3, 2}] = p.p;
      c[{4, 6, 4}] = p.s;
      c[{5, 6, 4}] = p.q;
      c[{2, 3, 1}] = -x * p.q + x * p.r + p.s;
      c[{1, 2, 3}] = c12_3;
      c[{4, 6, 5}] = -x * p.p - x * p.s - p.r;
      c[{4, 5, 6}] = c45_6;
      c[{2, 3, 2}] = c45_6 - p.r;
      c[{5, 6, 5}] = c12_3 - p.s;
      break;
    }
    case OrthoCase::I:
      throw std::invalid_argument("use ortho_type_I for the type I ansatz");
  }
  LieAlgebra lie = from_constants(c, "typeII");
  auto [psi0, phi0] = type_II_forms(p.a, p.b);
  KForm omega = KForm(p.a * form("e1^e2 - f1^f2")) + KForm(p.b * form("e1^f1 + e2^f2")) + form("e3^f3");
  KForm rho = psi0 - KForm(p.xi2 * phi0);
  auto parts = split_direct_sum(lie);
  return {lie, omega, rho, p, parts->first, parts->second};
}

ParaPair para_eigenspace_pair(const LieAlgebra& g1, const LieAlgebra& g2, const KForm& omega) {
  if (omega.degree() != 2) throw std::invalid_argument("omega must be a two-form");
  for (const auto& [m, c] : omega.terms())
    if ((m & 0x07) == 0 || (m & 0x38) == 0) throw std::invalid_argument("omega must lie in g1^* (x) g2^*");
  if (is_zero(phi_of(omega))) throw std::invalid_argument("omega is degenerate");
  const LieAlgebra sum = direct_sum(g1, g2);
  KForm rho = form("e1^e2^e3 + f1^f2^f3");
  HalfFlatReport report = verify(sum, omega, rho);
  return {omega, rho, report};
}

std::optional<std::pair<LieAlgebra, LieAlgebra>> split_direct_sum(const LieAlgebra& lie) {
  if (lie.dim() != 6) return std::nullopt;
  std::vector<KForm> first, second;
  for (int k = 0; k < 6; ++k) {
    const unsigned allowed = k < 3 ? 0x07u : 0x38u;
    KForm shifted(2);
    for (const auto& [m, c] : lie.d_basis(k).terms()) {
      if ((m & ~allowed) != 0) return std::nullopt;
      shifted.add_term(static_cast<Mask>(k < 3 ? m : (m >> 3)), c);
    }
    (k < 3 ? first : second).push_back(shifted);
  }
  return std::make_pair(LieAlgebra::from_differentials(3, first), LieAlgebra::from_differentials(3, second));
}

}  // namespace halfflat
