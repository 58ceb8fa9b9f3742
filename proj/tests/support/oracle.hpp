#pragma once

// Independent reference implementations used as test oracles. They work on
// dense antisymmetric tensors indexed by explicit index tuples and never use
// the bitmask sign tables of the library.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "halfflat/exterior.hpp"
#include "halfflat/liealg.hpp"
#include "halfflat/stable.hpp"

namespace oracle {

using halfflat::KForm;
using halfflat::Mask;
using halfflat::Scalar;

/// Sign of a permutation given as a sequence of distinct integers, computed
/// by counting inversions directly; zero on repeated entries.
inline int permutation_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) ++inv;
    }
  return inv % 2 ? -1 : 1;
}

inline std::vector<int> indices(Mask m) {
  std::vector<int> out;
  for (int i = 0; i < 6; ++i)
    if (m & (1u << i)) out.push_back(i);
  return out;
}

inline Mask mask_of(const std::vector<int>& idx) {
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  return static_cast<Mask>(m);
}

/// Wedge by concatenating index lists and sorting with a permutation sign.
inline KForm wedge(const KForm& a, const KForm& b) {
  KForm out(a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<int> seq = indices(ma);
      auto ib = indices(mb);
      seq.insert(seq.end(), ib.begin(), ib.end());
      int s = permutation_sign(seq);
      if (s == 0) continue;
      Scalar c = ca * cb * s;
      out.add_term(mask_of(seq), c);
    }
  return out;
}

/// Full antisymmetric evaluation a(v_1, ..., v_k) by summing over all
/// permutations of the monomial indices (Leibniz formula).
inline Scalar evaluate(const KForm& a, const std::vector<halfflat::Vector>& vs) {
  Scalar total = 0;
  for (const auto& [m, c] : a.terms()) {
    auto idx = indices(m);
    std::vector<int> perm(idx.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    do {
      Scalar prod = c * permutation_sign(perm);
      for (std::size_t r = 0; r < perm.size(); ++r) prod *= vs[r][idx[perm[r]]];
      total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return total;
}

/// Interior product through evaluation: (v -| a)(e_I) = a(v, e_I).
inline KForm contract(const halfflat::Vector& v, const KForm& a) {
  KForm out(a.degree() - 1);
  for (Mask m : halfflat::monomials(a.degree() - 1)) {
    std::vector<halfflat::Vector> args{v};
    for (int i : indices(m)) args.push_back(halfflat::basis_vector<Scalar>(i));
    out.add_term(m, evaluate(a, args));
  }
  return out;
}

/// Exterior derivative from the bracket: for a k-form,
/// da(X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i, X_j], X_0..^i..^j..X_k).
inline KForm d(const halfflat::LieAlgebra& lie, const KForm& a) {
  const int k = a.degree();
  KForm out(k + 1);
  for (Mask m : halfflat::monomials(k + 1, lie.dim())) {
    auto idx = indices(m);
    Scalar total = 0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<halfflat::Vector> args{lie.bracket(halfflat::basis_vector<Scalar>(idx[i]),
                                                       halfflat::basis_vector<Scalar>(idx[j]))};
        for (int r = 0; r <= k; ++r)
          if (r != i && r != j) args.push_back(halfflat::basis_vector<Scalar>(idx[r]));
        Scalar v = evaluate(a, args);
        total += ((i + j) % 2 ? -v : v);
      }
    out.add_term(m, total);
  }
  return out;
}

/// Random small rational in [-bound, bound] with denominators up to max_den.
inline Scalar random_rational(std::mt19937_64& rng, int bound = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-bound * max_den, bound * max_den);
  std::uniform_int_distribution<int> den(1, max_den);
  return halfflat::rational(num(rng), den(rng));
}

inline KForm random_form(std::mt19937_64& rng, int degree, int dim = 6, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  KForm out(degree);
  for (Mask m : halfflat::monomials(degree, dim))
    if (keep(rng)) out.add_term(m, random_rational(rng));
  return out;
}

inline halfflat::Vector random_vector(std::mt19937_64& rng) {
  halfflat::Vector v;
  for (auto& x : v) x = random_rational(rng);
  return v;
}

}  // namespace oracle

namespace oracle {

/// Every catalog algebra, parametric families at each legal sampled mu.
inline std::vector<halfflat::LieAlgebra> catalog_instances() {
  std::vector<halfflat::LieAlgebra> out;
  for (const auto& e : halfflat::catalog_entries()) {
    if (!e.parametric) {
      out.push_back(halfflat::catalog(e.tag));
      continue;
    }
    for (const auto& mu : halfflat::sample_mus(e.tag)) out.push_back(halfflat::catalog(e.tag, mu));
  }
  return out;
}

}  // namespace oracle

namespace oracle {

inline KForm mono(std::initializer_list<int> one_based, Scalar c = 1) {
  unsigned m = 0;
  for (int i : one_based) m |= 1u << (i - 1);
  return KForm::monomial(static_cast<Mask>(m), c);
}

/// Pseudo-Hermitian model frame: omega = -sum sigma_i e^{i,i+3},
/// rho = Re((e^1 + i e^4)(e^2 + i e^5)(e^3 + i e^6)).
inline std::pair<KForm, KForm> hermitian_model(std::array<int, 3> sigma = {1, 1, 1}) {
  KForm omega = mono({1, 4}, -sigma[0]) + mono({2, 5}, -sigma[1]) + mono({3, 6}, -sigma[2]);
  KForm rho = mono({1, 2, 3}) - mono({1, 5, 6}) + mono({2, 4, 6}) - mono({3, 4, 5});
  return {omega, rho};
}

/// Para-Hermitian model frame: omega = -sum e^{i,i+3}, rho = e^123 + e^456.
inline std::pair<KForm, KForm> para_model() {
  KForm omega = mono({1, 4}, -1) + mono({2, 5}, -1) + mono({3, 6}, -1);
  return {omega, mono({1, 2, 3}) + mono({4, 5, 6})};
}

using Coframe = std::array<std::array<Scalar, 6>, 6>;

inline Coframe random_coframe(std::mt19937_64& rng) {
  Coframe a{};
  while (true) {
    halfflat::Matrix<Scalar> m(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        a[i][j] = random_rational(rng, 2, 2);
        m(i, j) = a[i][j];
      }
    if (!halfflat::is_zero(halfflat::determinant(m))) return a;
  }
}

}  // namespace oracle

namespace oracle {

// A random compatible pair obtained from a model frame by a rational coframe
// change, together with the model's expected kind.
struct RandomPair {
  KForm omega, rho;
  halfflat::StructureKind kind;
};

inline RandomPair random_pair(std::mt19937_64& rng) {
  const int which = static_cast<int>(rng() % 5);
  if (which == 4) {
    const auto model = para_model();
    const auto a = random_coframe(rng);
    return {substitute(model.first, a), substitute(model.second, a), halfflat::StructureKind::SL3R};
  }
  // sigma_i = g(eta_i, eta_i) in the model; the orientation rule multiplies the
  // metric by s = sign(phi(omega)) = sigma_1 sigma_2 sigma_3.
  static const std::array<std::array<int, 3>, 4> sigmas = {{{1, 1, 1}, {1, 1, -1}, {1, -1, -1}, {-1, -1, -1}}};
  const auto sigma = sigmas[which];
  const int s = sigma[0] * sigma[1] * sigma[2];
  int positive_pairs = 0;
  for (int x : sigma) positive_pairs += (s * x > 0);
  using halfflat::StructureKind;
  static const std::array<StructureKind, 4> by_pairs = {StructureKind::SU03, StructureKind::SU12, StructureKind::SU21,
                                                         StructureKind::SU3};
  const auto model = hermitian_model(sigma);
  const auto a = random_coframe(rng);
  return {substitute(model.first, a), substitute(model.second, a), by_pairs[positive_pairs]};
}

inline halfflat::Matrix<Scalar> random_invertible3(std::mt19937_64& rng) {
  halfflat::Matrix<Scalar> a(3, 3);
  do {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = random_rational(rng, 3, 3);
  } while (halfflat::is_zero(halfflat::determinant(a)));
  return a;
}

}  // namespace oracle
