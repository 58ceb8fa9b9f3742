#pragma once

// Stable forms in dimension six: K_rho, lambda(rho), phi(omega), the induced
// (para-)complex structure and the metric of a compatible pair.
//
// Conventions. phi(rho) is taken as sqrt|lambda| times nu, so J = K / sqrt|lambda|.
// The raw metric is G_uv = eps * s * omega(u, K v) with s = sign(phi(omega))
// relative to nu and eps = -1 for lambda < 0, +1 for lambda > 0. These are
// the values for which the model frames
//   omega = -(e^14 + e^25 + e^36), rho = Re((e^1 + i e^4)(e^2 + i e^5)(e^3 + i e^6))
//   omega = -(e^14 + e^25 + e^36), rho = e^123 + e^456
// give g = Id and g = sum e^i . e^{i+3} respectively. The induced metric is
// g = G / sqrt|lambda|, which does not depend on the scale of rho.

#include <optional>
#include <stdexcept>
#include <string>

#include "halfflat/exterior.hpp"
#include "halfflat/linalg.hpp"

namespace halfflat {

class NotStableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotCompatibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix of K_rho relative to nu: column j is kappa((e_j -| rho) ^ rho).
template <class F>
Matrix<F> k_matrix(const BasicForm<F>& rho) {
  if (rho.degree() != 3) throw std::invalid_argument("k_matrix expects a three-form");
  Matrix<F> k(kDim, kDim);
  for (int j = 0; j < kDim; ++j) {
    const BasicForm<F> xi = wedge(contract_basis(j, rho), rho);
    const auto column = kappa(xi).first;
    for (int i = 0; i < kDim; ++i) k(i, j) = column[i];
  }
  return k;
}

/// lambda(rho) = tr(K^2) / 6 relative to nu (x) nu.
template <class F>
F lambda_of(const Matrix<F>& k) {
  return (k * k).trace() / F(6);
}

template <class F>
F lambda_of(const BasicForm<F>& rho) {
  return lambda_of(k_matrix(rho));
}

/// phi(omega) = omega^3 / 6 relative to nu.
template <class F>
F phi_of(const BasicForm<F>& omega) {
  if (omega.degree() != 2) throw std::invalid_argument("phi_of expects a two-form");
  return volume_ratio(wedge(wedge(omega, omega), omega)).value / F(6);
}

template <class F>
bool is_compatible(const BasicForm<F>& omega, const BasicForm<F>& rho) {
  return wedge(omega, rho).is_zero();
}

template <class F>
struct Normalization {
  F c4;       // (c^4) with c rho normalized
  int sign;   // branch of phi(c rho) = sign * 2 phi(omega)
};

/// c^4 = 4 phi(omega)^2 / |lambda(rho)|, so that c rho satisfies
/// |lambda(c rho)| = 4 phi(omega)^2.
template <class F>
Normalization<F> normalization_scale(const BasicForm<F>& omega, const BasicForm<F>& rho) {
  const F lambda = lambda_of(rho);
  const F phi = phi_of(omega);
  if (is_zero(lambda)) throw NotStableError("three-form is not stable (lambda = 0)");
  if (is_zero(phi)) throw NotStableError("two-form is degenerate");
  const F abs_lambda = sign_of(lambda) < 0 ? F(-lambda) : lambda;
  return {F(4) * phi * phi / abs_lambda, sign_of(phi)};
}

/// Sign eps used in the metric for a given sign of lambda.
inline int metric_eps(int lambda_sign) { return lambda_sign < 0 ? -1 : 1; }

template <class F>
struct RawMetric {
  Matrix<F> g_hat;   // eps * s * omega(., K .)
  int eps;
  int orientation;   // s = sign(phi(omega))
};

/// Raw induced metric; throws NotStableError or NotCompatibleError.
template <class F>
RawMetric<F> induced_metric_raw(const BasicForm<F>& omega, const Matrix<F>& k) {
  const F lambda = lambda_of(k);
  const F phi = phi_of(omega);
  if (is_zero(lambda) || is_zero(phi)) throw NotStableError("pair is not stable");
  const int eps = metric_eps(sign_of(lambda));
  const int s = sign_of(phi);
  const auto w = gram2(omega);
  Matrix<F> g(kDim, kDim);
  for (int u = 0; u < kDim; ++u)
    for (int v = 0; v < kDim; ++v) {
      F acc(0);
      for (int r = 0; r < kDim; ++r)
        if (!is_zero(k(r, v))) acc += w[u][r] * k(r, v);
      g(u, v) = eps * s > 0 ? acc : F(-acc);
    }
  if (!g.is_symmetric()) throw NotCompatibleError("omega ^ rho != 0, the metric is not symmetric");
  return {g, eps, s};
}

template <class F>
RawMetric<F> induced_metric_raw(const BasicForm<F>& omega, const BasicForm<F>& rho) {
  return induced_metric_raw(omega, k_matrix(rho));
}

/// Exact signature (positive, negative, zero).
template <class F>
Inertia signature(const Matrix<F>& m) {
  return inertia(m);
}

enum class StructureKind { SU3, SU21, SU12, SU03, SL3R, NotStable, NotCompatible, NotNormalizable };

std::string to_string(StructureKind kind);

struct StructureType {
  StructureKind kind = StructureKind::NotStable;
  Inertia signature;
  bool is_stabilizer_kind() const;
  std::string str() const;
};

/// Kind from the sign of lambda and the signature of the raw metric.
StructureType classify_structure(int lambda_sign, const Inertia& sig);

/// Full pipeline verdict; never throws for well-formed degrees.
template <class F>
StructureType structure_type(const BasicForm<F>& omega, const BasicForm<F>& rho) {
  const Matrix<F> k = k_matrix(rho);
  const F lambda = lambda_of(k);
  if (is_zero(lambda) || is_zero(phi_of(omega))) return {StructureKind::NotStable, {}};
  if (!is_compatible(omega, rho)) return {StructureKind::NotCompatible, {}};
  const auto raw = induced_metric_raw(omega, k);
  return classify_structure(sign_of(lambda), signature(raw.g_hat));
}

/// J*_rho alpha (v) in Q(sqrt|lambda|), with phi(rho) = sqrt|lambda| nu.
QuadExt j_apply_oneform(const KForm& rho, const KForm& alpha, const Vector& v);

/// A candidate pair with its invariants computed once.
template <class F>
class BasicStablePair {
 public:
  BasicStablePair(BasicForm<F> omega, BasicForm<F> rho)
      : omega_(std::move(omega)), rho_(std::move(rho)), k_(k_matrix(rho_)) {
    if (omega_.degree() != 2 || rho_.degree() != 3) throw std::invalid_argument("stable pair needs a 2-form and a 3-form");
    lambda_ = lambda_of(k_);
    phi_omega_ = phi_of(omega_);
    type_ = structure_type(omega_, rho_);
    if (type_.kind != StructureKind::NotStable && type_.kind != StructureKind::NotCompatible) {
      auto raw = induced_metric_raw(omega_, k_);
      g_raw_ = raw.g_hat;
      eps_ = raw.eps;
    }
    if (!is_zero(lambda_) && !is_zero(phi_omega_)) norm_c4_ = normalization_scale(omega_, rho_).c4;
  }

  const BasicForm<F>& omega() const { return omega_; }
  const BasicForm<F>& rho() const { return rho_; }
  const F& lambda() const { return lambda_; }
  const F& phi_omega() const { return phi_omega_; }
  const Matrix<F>& k() const { return k_; }
  const std::optional<Matrix<F>>& g_raw() const { return g_raw_; }
  int eps() const { return eps_; }
  const std::optional<F>& norm_c4() const { return norm_c4_; }
  const StructureType& type() const { return type_; }

 private:
  BasicForm<F> omega_;
  BasicForm<F> rho_;
  Matrix<F> k_;
  F lambda_;
  F phi_omega_;
  std::optional<Matrix<F>> g_raw_;
  int eps_ = 0;
  std::optional<F> norm_c4_;
  StructureType type_;
};

using StablePair = BasicStablePair<Scalar>;

}  // namespace halfflat
