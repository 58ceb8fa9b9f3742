#pragma once

#include <iosfwd>
#include <string>

#include "halfflat/scalar.hpp"

namespace halfflat {

/// Element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
///
/// The radicand is kept in a canonical square-free form (an integer with no
/// square factor up to a trial-division bound), so sqrt(8) and 2*sqrt(2) share
/// a radicand. A value with b == 0 carries no radicand and mixes freely with
/// any other value; two irrational values with different radicands cannot be
/// combined and raise std::domain_error.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(const Scalar& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(const Scalar& a, const Scalar& b, const Scalar& radicand);

  /// sqrt(q) for q >= 0; collapses to a rational when q is a rational square.
  static QuadExt sqrt(const Scalar& q);

  const Scalar& rational_part() const { return a_; }
  const Scalar& irrational_part() const { return b_; }
  /// Square-free radicand, or 0 when the value is rational.
  const Scalar& radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  QuadExt operator-() const;

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (sgn(x.b_) == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  /// Conjugate a - b*sqrt(D).
  QuadExt conjugate() const;
  /// Field norm a^2 - b^2 D.
  Scalar norm() const;
  /// Exact sign of the real number a + b*sqrt(D) (positive root).
  int sign() const;
  double to_double() const;
  std::string str() const;

 private:
  void normalize();
  const Scalar& common_radicand(const QuadExt& o) const;

  Scalar a_{0};
  Scalar b_{0};
  Scalar d_{0};
};

inline int sign_of(const QuadExt& x) { return x.sign(); }
inline bool is_zero(const QuadExt& x) { return x.sign() == 0; }
inline double to_double(const QuadExt& x) { return x.to_double(); }
inline std::string to_string(const QuadExt& x) { return x.str(); }
std::ostream& operator<<(std::ostream& os, const QuadExt& x);

}  // namespace halfflat
