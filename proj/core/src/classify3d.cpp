#include "halfflat/classify3d.hpp"

#include <array>

namespace halfflat {

namespace {

void require_dim3(const LieAlgebra& lie) {
  if (lie.dim() != 3) throw std::invalid_argument("classification needs a three-dimensional Lie algebra");
}

BianchiClass from_catalog(const std::string& tag) {
  const auto& entry = catalog_entry(tag);
  BianchiClass out;
  out.tag = entry.tag;
  out.display = entry.display;
  out.bianchi = entry.bianchi;
  out.unimodular = entry.unimodular;
  return out;
}

std::optional<Scalar> mu_from_r3mu(const Scalar& d) {
  Scalar root;
  if (!rational_sqrt(Scalar(1 - d), root)) return std::nullopt;
  return Scalar((2 - d - 2 * root) / d);
}

std::optional<Scalar> mu_from_r3pmu(const Scalar& d) {
  Scalar root;
  if (!rational_sqrt(Scalar(d - 1), root)) return std::nullopt;
  return Scalar(1 / root);
}

}  // namespace

std::string BianchiClass::invariant() const {
  if (eigen_signs) {
    std::string s = "(";
    auto add = [&s](int count, char c) {
      for (int i = 0; i < count; ++i) {
        if (s.size() > 1) s += ',';
        s += c;
      }
    };
    add(eigen_signs->positive, '+');
    add(eigen_signs->negative, '-');
    add(eigen_signs->zero, '0');
    return s + ")";
  }
  if (determinant) return "D=" + to_string(*determinant) + (l_tilde_identity ? " (L~=id)" : "");
  return "";
}

Matrix<Scalar> milnor_L(const LieAlgebra& lie) {
  require_dim3(lie);
  static const std::array<std::array<int, 2>, 3> pairs = {{{1, 2}, {2, 0}, {0, 1}}};
  Matrix<Scalar> l(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) l(j, k) = lie.structure_constant(pairs[k][0], pairs[k][1], j);
  return l;
}

Matrix<Scalar> unimodular_kernel_action(const LieAlgebra& lie) {
  require_dim3(lie);
  const auto t = trace_form(lie);
  int m = -1;
  for (int i = 0; i < 3 && m < 0; ++i)
    if (!is_zero(t[i])) m = i;
  if (m < 0) throw std::invalid_argument("algebra is unimodular");
  Vector x{};
  x.fill(0);
  x[m] = 2 / t[m];
  Matrix<Scalar> row(1, 3);
  for (std::size_t i = 0; i < 3; ++i) row(0, i) = t[i];
  const auto ker = kernel(row);
  if (ker.size() != 2) throw InvalidLieAlgebra("unimodular kernel is not two-dimensional");
  std::array<Vector, 2> u;
  for (int i = 0; i < 2; ++i) {
    u[i].fill(0);
    for (int c = 0; c < 3; ++c) u[i][c] = ker[i][c];
  }
  const Vector uu = lie.bracket(u[0], u[1]);
  for (int c = 0; c < 3; ++c)
    if (!is_zero(uu[c])) throw InvalidLieAlgebra("unimodular kernel is not abelian");
  // Solve [X, u_i] = a u_0 + b u_1 via the 3x2 system.
  Matrix<Scalar> basis(3, 2);
  for (std::size_t c = 0; c < 3; ++c) {
    basis(c, 0) = u[0][c];
    basis(c, 1) = u[1][c];
  }
  Matrix<Scalar> l(2, 2);
  for (int i = 0; i < 2; ++i) {
    const Vector img = lie.bracket(x, u[i]);
    Matrix<Scalar> aug(3, 3);
    for (std::size_t c = 0; c < 3; ++c) {
      aug(c, 0) = basis(c, 0);
      aug(c, 1) = basis(c, 1);
      aug(c, 2) = img[c];
    }
    const auto pivots = row_reduce(aug);
    if (pivots.size() != 2 || pivots[1] != 1) throw InvalidLieAlgebra("unimodular kernel is not an ideal");
    l(0, i) = aug(0, 2);
    l(1, i) = aug(1, 2);
  }
  return l;
}

BianchiClass classify(const LieAlgebra& lie) {
  require_dim3(lie);
  if (!check_jacobi(lie)) throw InvalidLieAlgebra("structure constants violate the Jacobi identity");
  if (is_unimodular(lie)) {
    const auto l = milnor_L(lie);
    if (!l.is_symmetric()) throw InvalidLieAlgebra("Milnor L of a unimodular algebra is not symmetric");
    Inertia signs = inertia(l);
    if (signs.negative > signs.positive) std::swap(signs.negative, signs.positive);
    std::string tag;
    if (signs == Inertia{3, 0, 0}) tag = "su2";
    else if (signs == Inertia{2, 1, 0}) tag = "sl2";
    else if (signs == Inertia{2, 0, 1}) tag = "e2";
    else if (signs == Inertia{1, 1, 1}) tag = "e11";
    else if (signs == Inertia{1, 0, 2}) tag = "h3";
    else tag = "R3";
    BianchiClass out = from_catalog(tag);
    out.eigen_signs = signs;
    return out;
  }
  const auto lt = unimodular_kernel_action(lie);
  const Scalar d = determinant(lt);
  const bool identity = lt == Matrix<Scalar>::identity(2);
  BianchiClass out;
  if (is_zero(d)) {
    out = from_catalog("r2R");
  } else if (d == 1) {
    out = from_catalog(identity ? "r31" : "r3");
  } else if (d < 1) {
    out = from_catalog("r3mu");
    out.mu = mu_from_r3mu(d);
  } else {
    out = from_catalog("r3pmu");
    out.mu = mu_from_r3pmu(d);
  }
  out.determinant = d;
  out.l_tilde_identity = identity;
  return out;
}

}  // namespace halfflat
