#pragma once

// Sparse exterior algebra over the fixed six-dimensional space V with basis
// e_1..e_6 and dual basis e^1..e^6. A monomial e^{i_1..i_k} (i_1 < .. < i_k)
// is keyed by the bitmask of its indices; bit 0 is e^1.

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "halfflat/quadext.hpp"
#include "halfflat/scalar.hpp"

namespace halfflat {

inline constexpr int kDim = 6;
using Mask = std::uint8_t;
/// Mask of the reference volume nu = e^1 ^ ... ^ e^6.
inline constexpr Mask kVolumeMask = 0x3f;

inline int degree_of(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

/// Sign of e^A ^ e^B relative to e^{A u B}; zero if A and B intersect.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int j = 0; j < kDim; ++j)
    if (b & (1u << j)) inversions += std::popcount(static_cast<unsigned>(a) >> (j + 1));
  return (inversions & 1) ? -1 : 1;
}

/// Sign of e_k contracted into e^A relative to e^{A \ k}; zero if k is not in A.
inline int contract_sign(int k, Mask a) {
  if (!(a & (1u << k))) return 0;
  return (std::popcount(static_cast<unsigned>(a) & ((1u << k) - 1)) & 1) ? -1 : 1;
}

/// All masks of the given degree whose indices lie below `dim`, in increasing
/// numeric order.
inline std::vector<Mask> monomials(int degree, int dim = kDim) {
  std::vector<Mask> out;
  for (unsigned m = 0; m < (1u << dim); ++m)
    if (std::popcount(m) == degree) out.push_back(static_cast<Mask>(m));
  return out;
}

template <class F>
using BasicVector = std::array<F, kDim>;
using Vector = BasicVector<Scalar>;

template <class F>
BasicVector<F> basis_vector(int k) {
  BasicVector<F> v;
  v.fill(F(0));
  v[k] = F(1);
  return v;
}

/// An element of Lambda^6 V* stored as a multiple of nu.
template <class F>
struct BasicVolumeRatio {
  F value{0};
  friend bool operator==(const BasicVolumeRatio& x, const BasicVolumeRatio& y) { return x.value == y.value; }
};
using VolumeRatio = BasicVolumeRatio<Scalar>;

/// Homogeneous k-form with coefficients in F. Zero coefficients are never stored.
template <class F>
class BasicForm {
 public:
  using Terms = std::map<Mask, F>;

  explicit BasicForm(int degree = 0) : degree_(degree) {
    if (degree < 0 || degree > kDim) throw std::invalid_argument("form degree out of range");
  }

  static BasicForm monomial(Mask m, const F& c = F(1)) {
    BasicForm f(degree_of(m));
    f.add_term(m, c);
    return f;
  }

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  F coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? F(0) : it->second;
  }

  void add_term(Mask m, const F& c) {
    if (degree_of(m) != degree_) throw std::invalid_argument("monomial degree does not match form degree");
    if (::halfflat::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (::halfflat::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicForm& operator+=(const BasicForm& o) {
    check_degree(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicForm& operator-=(const BasicForm& o) {
    check_degree(o);
    for (const auto& [m, c] : o.terms_) add_term(m, F(-c));
    return *this;
  }
  BasicForm& operator*=(const F& s) {
    if (::halfflat::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  friend BasicForm operator*(const F& s, BasicForm a) { return a *= s; }
  friend BasicForm operator*(BasicForm a, const F& s) { return a *= s; }
  BasicForm operator-() const {
    BasicForm r = *this;
    for (auto& [m, c] : r.terms_) c = F(-c);
    return r;
  }

  friend bool operator==(const BasicForm& a, const BasicForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicForm& a, const BasicForm& b) { return !(a == b); }

 private:
  void check_degree(const BasicForm& o) const {
    if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
  }

  int degree_;
  Terms terms_;
};

using KForm = BasicForm<Scalar>;

/// Coefficient-type conversion (e.g. rational form into Q(sqrt D)).
template <class G, class F>
BasicForm<G> convert(const BasicForm<F>& f) {
  BasicForm<G> out(f.degree());
  for (const auto& [m, c] : f.terms()) out.add_term(m, G(c));
  return out;
}

/// One-form sum_i v_i e^i.
template <class F>
BasicForm<F> one_form(const BasicVector<F>& v) {
  BasicForm<F> out(1);
  for (int i = 0; i < kDim; ++i) out.add_term(static_cast<Mask>(1u << i), v[i]);
  return out;
}

template <class F>
BasicForm<F> wedge(const BasicForm<F>& a, const BasicForm<F>& b) {
  if (a.degree() + b.degree() > kDim) throw std::invalid_argument("wedge degree overflow");
  BasicForm<F> out(a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      F c = ca * cb;
      if (s < 0) c = -c;
      out.add_term(static_cast<Mask>(ma | mb), c);
    }
  return out;
}

/// Interior product v -| a.
template <class F>
BasicForm<F> contract(const BasicVector<F>& v, const BasicForm<F>& a) {
  if (a.degree() == 0) throw std::invalid_argument("cannot contract into a 0-form");
  BasicForm<F> out(a.degree() - 1);
  for (int k = 0; k < kDim; ++k) {
    if (::halfflat::is_zero(v[k])) continue;
    for (const auto& [m, c] : a.terms()) {
      int s = contract_sign(k, m);
      if (s == 0) continue;
      F t = v[k] * c;
      if (s < 0) t = -t;
      out.add_term(static_cast<Mask>(m & ~(1u << k)), t);
    }
  }
  return out;
}

/// e_k -| a for a basis vector.
template <class F>
BasicForm<F> contract_basis(int k, const BasicForm<F>& a) {
  if (a.degree() == 0) throw std::invalid_argument("cannot contract into a 0-form");
  BasicForm<F> out(a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    int s = contract_sign(k, m);
    if (s == 0) continue;
    out.add_term(static_cast<Mask>(m & ~(1u << k)), s > 0 ? c : F(-c));
  }
  return out;
}

/// The canonical isomorphism Lambda^5 V* -> V (x) Lambda^6 V*: returns the
/// unique X with X -| nu = xi, paired with nu.
template <class F>
std::pair<BasicVector<F>, BasicVolumeRatio<F>> kappa(const BasicForm<F>& xi) {
  if (xi.degree() != 5) throw std::invalid_argument("kappa expects a 5-form");
  BasicVector<F> x;
  x.fill(F(0));
  for (const auto& [m, c] : xi.terms()) {
    int k = std::countr_zero(static_cast<unsigned>(~m & kVolumeMask));
    // e_k -| nu = (-1)^k e^{[6] \ k}  (k zero-based)
    x[k] = (k & 1) ? F(-c) : c;
  }
  return {x, BasicVolumeRatio<F>{F(1)}};
}

/// Coefficient of a top-degree form relative to nu.
template <class F>
BasicVolumeRatio<F> volume_ratio(const BasicForm<F>& top) {
  if (top.degree() != kDim) throw std::invalid_argument("volume ratio of a form that is not top-degree");
  return {top.coefficient(kVolumeMask)};
}

template <class F>
BasicForm<F> volume_form() {
  return BasicForm<F>::monomial(kVolumeMask);
}

/// Evaluates a 2-form on a pair of vectors: omega(u, v).
template <class F>
F evaluate2(const BasicForm<F>& omega, const BasicVector<F>& u, const BasicVector<F>& v) {
  F out(0);
  for (const auto& [m, c] : omega.terms()) {
    int i = std::countr_zero(static_cast<unsigned>(m));
    int j = 31 - std::countl_zero(static_cast<unsigned>(m));
    out += c * (u[i] * v[j] - u[j] * v[i]);
  }
  return out;
}

/// Antisymmetric Gram matrix entries omega(e_i, e_j).
template <class F>
std::array<std::array<F, kDim>, kDim> gram2(const BasicForm<F>& omega) {
  std::array<std::array<F, kDim>, kDim> g;
  for (auto& row : g) row.fill(F(0));
  for (const auto& [m, c] : omega.terms()) {
    int i = std::countr_zero(static_cast<unsigned>(m));
    int j = 31 - std::countl_zero(static_cast<unsigned>(m));
    g[i][j] = c;
    g[j][i] = -c;
  }
  return g;
}

/// Pulls back a form along the coframe substitution e^i -> sum_j M[i][j] e^j.
template <class F, class Matrix>
BasicForm<F> substitute(const BasicForm<F>& a, const Matrix& m) {
  std::array<BasicForm<F>, kDim> images;
  for (int i = 0; i < kDim; ++i) {
    BasicForm<F> img(1);
    for (int j = 0; j < kDim; ++j) img.add_term(static_cast<Mask>(1u << j), F(m[i][j]));
    images[i] = img;
  }
  BasicForm<F> out(a.degree());
  for (const auto& [mask, c] : a.terms()) {
    BasicForm<F> term(0);
    term.add_term(0, c);
    for (int i = 0; i < kDim; ++i)
      if (mask & (1u << i)) term = wedge(term, images[i]);
    out += term;
  }
  return out;
}

}  // namespace halfflat
