#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "weylkit/error.hpp"

namespace weylkit {

/// Exact rational scalar. gmpxx keeps results of arithmetic in lowest terms
/// with a positive denominator; only direct (num, den) construction needs an
/// explicit canonicalize, which make_rational performs.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0)
    throw Error(ErrorKind::ZeroDivisor, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational &r) { return sgn(r) == 0; }

/// Renders as "p" or "p/q"; never as a decimal.
inline std::string to_string(const Rational &r) { return r.get_str(); }

/// Accepts an optionally signed integer or p/q literal.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string &part, bool allow_sign) {
    std::size_t k = 0;
    if (allow_sign && k < part.size() && (part[k] == '-' || part[k] == '+'))
      ++k;
    if (k == part.size())
      return false;
    for (; k < part.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(part[k])))
        return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false))
    throw Error(ErrorKind::InputError, "malformed rational '" + s + "'");
  if (num[0] == '+')
    num.erase(0, 1);
  Integer d(den);
  if (d == 0)
    throw Error(ErrorKind::ZeroDivisor, "rational with zero denominator");
  Rational r{Integer(num), d};
  r.canonicalize();
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// s (s-1) ... (s-i+1); valid for negative s as well.
inline Integer falling_factorial(long s, int i) {
  Integer out = 1;
  for (int r = 0; r < i; ++r)
    out *= s - r;
  return out;
}

} // namespace weylkit
