#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace halfflat {

/// Exact rational number. Always canonical (lowest terms, positive denominator).
using Scalar = mpq_class;

/// Canonical rational from numerator/denominator.
inline Scalar rational(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// "p" when the denominator is one, otherwise "p/q".
std::string to_string(const Scalar& q);

inline int sign_of(const Scalar& q) { return sgn(q); }
inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }
inline double to_double(const Scalar& q) { return q.get_d(); }

/// Exact rational square root if one exists.
bool rational_sqrt(const Scalar& q, Scalar& root);

/// Best rational approximation of x with denominator at most max_den
/// (continued-fraction convergents and semiconvergents).
Scalar approximate(double x, std::int64_t max_den);

}  // namespace halfflat
