#include "halfflat/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace halfflat {

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash) throw std::invalid_argument("malformed rational '" + s + "'");
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw std::invalid_argument("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Scalar q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

bool rational_sqrt(const Scalar& q, Scalar& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Scalar(n, d);
  root.canonicalize();
  return true;
}

Scalar approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_den < 1) max_den = 1;
  // Convergents h/k of the continued fraction of x.
  long double r = x;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Scalar best = rational(static_cast<long>(std::llround(x)));
  for (int iter = 0; iter < 64; ++iter) {
    long double a_ld = std::floor(r);
    if (std::fabs(a_ld) > 9e15L) break;
    auto a = static_cast<std::int64_t>(a_ld);
    std::int64_t h2 = a * h1 + h0;
    std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) {
      // Largest admissible semiconvergent.
      std::int64_t t = (max_den - k0) / k1;
      if (t > 0) {
        Scalar semi(mpz_class(static_cast<long>(t * h1 + h0)), mpz_class(static_cast<long>(t * k1 + k0)));
        semi.canonicalize();
        Scalar conv(mpz_class(static_cast<long>(h1)), mpz_class(static_cast<long>(k1)));
        conv.canonicalize();
        double es = std::fabs(semi.get_d() - x), ec = std::fabs(conv.get_d() - x);
        best = es < ec ? semi : conv;
      }
      break;
    }
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    best = Scalar(mpz_class(static_cast<long>(h1)), mpz_class(static_cast<long>(k1)));
    best.canonicalize();
    long double frac = r - a_ld;
    if (frac < 1e-18L) break;
    r = 1.0L / frac;
  }
  return best;
}

}  // namespace halfflat
