#include "halfflat/quadext.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace halfflat {
namespace {

// Splits a positive integer n = s^2 * r, removing square factors found by
// trial division up to `bound`. r stays exact either way; only canonicity of
// very large radicands is affected by the bound.
void split_square(const mpz_class& n, mpz_class& outside, mpz_class& inside) {
  constexpr unsigned long kBound = 100000;
  outside = 1;
  inside = n;
  if (mpz_perfect_square_p(inside.get_mpz_t())) {
    mpz_sqrt(outside.get_mpz_t(), inside.get_mpz_t());
    inside = 1;
    return;
  }
  for (unsigned long p = 2; p <= kBound; ++p) {
    mpz_class pp = p * p;
    if (pp > inside) break;
    while (mpz_divisible_p(inside.get_mpz_t(), pp.get_mpz_t())) {
      inside /= pp;
      outside *= p;
    }
  }
}

}  // namespace

QuadExt::QuadExt(const Scalar& a, const Scalar& b, const Scalar& radicand) : a_(a) {
  if (sgn(radicand) < 0) throw std::domain_error("negative radicand");
  QuadExt r = sqrt(radicand);
  // a + b*sqrt(D) with sqrt(D) = r.a + r.b*sqrt(r.d)
  a_ += b * r.a_;
  b_ = b * r.b_;
  d_ = r.d_;
  normalize();
}

QuadExt QuadExt::sqrt(const Scalar& q) {
  if (sgn(q) < 0) throw std::domain_error("square root of a negative rational");
  QuadExt out;
  if (sgn(q) == 0) return out;
  Scalar root;
  if (rational_sqrt(q, root)) {
    out.a_ = root;
    return out;
  }
  // sqrt(p/q) = sqrt(p*q)/q
  mpz_class pq = q.get_num() * q.get_den();
  mpz_class outside, inside;
  split_square(pq, outside, inside);
  out.b_ = Scalar(outside, q.get_den());
  out.b_.canonicalize();
  out.d_ = Scalar(inside);
  out.normalize();
  return out;
}

void QuadExt::normalize() {
  if (sgn(b_) == 0) d_ = 0;
}

const Scalar& QuadExt::common_radicand(const QuadExt& o) const {
  if (sgn(b_) == 0) return o.d_;
  if (sgn(o.b_) == 0) return d_;
  if (d_ != o.d_)
    throw std::domain_error("QuadExt radicand mismatch: " + d_.get_str() + " vs " + o.d_.get_str());
  return d_;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  Scalar d = common_radicand(o);
  Scalar a = a_ * o.a_ + b_ * o.b_ * d;
  Scalar b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  Scalar n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("QuadExt division by zero");
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  normalize();
  return *this;
}

QuadExt QuadExt::operator-() const {
  QuadExt r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadExt QuadExt::conjugate() const {
  QuadExt r = *this;
  r.b_ = -r.b_;
  return r;
}

Scalar QuadExt::norm() const { return a_ * a_ - b_ * b_ * d_; }

int QuadExt::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2 D.
  int c = sgn(Scalar(a_ * a_ - b_ * b_ * d_));
  return sa > 0 ? c : -c;
}

double QuadExt::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string QuadExt::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string s;
  if (sgn(a_) != 0) s = a_.get_str() + (sgn(b_) > 0 ? " + " : " - ");
  else if (sgn(b_) < 0) s = "-";
  Scalar ab = abs(b_);
  if (ab != 1) s += ab.get_str() + "*";
  s += "sqrt(" + d_.get_str() + ")";
  return s;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

}  // namespace halfflat
