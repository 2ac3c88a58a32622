#pragma once

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "weylkit/rational.hpp"

namespace weylkit {

/// Exponent pair (i, j) of x^i y^j, or of dx^i dy^j for operators.
struct Exponent2 {
  int i = 0;
  int j = 0;

  constexpr int degree() const { return i + j; }
  constexpr bool divides(Exponent2 other) const {
    return i <= other.i && j <= other.j;
  }

  friend constexpr Exponent2 operator+(Exponent2 a, Exponent2 b) {
    return {a.i + b.i, a.j + b.j};
  }
  friend constexpr Exponent2 operator-(Exponent2 a, Exponent2 b) {
    return {a.i - b.i, a.j - b.j};
  }
  friend constexpr bool operator==(Exponent2, Exponent2) = default;
};

/// Degree-lexicographic order: total degree first, ties broken by the
/// x-exponent. Compatible with translation, a < b iff a + c < b + c.
constexpr std::strong_ordering deglex_cmp(Exponent2 a, Exponent2 b) {
  if (auto c = a.degree() <=> b.degree(); c != 0)
    return c;
  return a.i <=> b.i;
}

struct DegLexLess {
  constexpr bool operator()(Exponent2 a, Exponent2 b) const {
    return deglex_cmp(a, b) < 0;
  }
};

/// Bivariate polynomial in x, y over Q. Terms are kept in deg-lex order, so
/// the leading term is the last entry. No stored coefficient is zero.
class BiPoly {
public:
  using Terms = std::map<Exponent2, Rational, DegLexLess>;

  BiPoly() = default;
  BiPoly(const Rational &constant) { add_term({0, 0}, constant); }
  BiPoly(long constant) : BiPoly(Rational(constant)) {}

  static BiPoly monomial(Exponent2 e, const Rational &c = 1) {
    BiPoly p;
    p.add_term(e, c);
    return p;
  }
  static BiPoly x() { return monomial({1, 0}); }
  static BiPoly y() { return monomial({0, 1}); }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent2{});
  }

  Rational coeff(Exponent2 e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff({0, 0}); }

  /// -1 for the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
  }
  /// Lowest total degree of a term (order of vanishing at the origin).
  int min_degree() const {
    int best = -1;
    for (const auto &[e, c] : terms_)
      if (best < 0 || e.degree() < best)
        best = e.degree();
    return best;
  }

  /// Precondition: nonzero.
  Exponent2 leading_exponent() const { return terms_.rbegin()->first; }
  const Rational &leading_coeff() const { return terms_.rbegin()->second; }

  void add_term(Exponent2 e, const Rational &c) {
    if (sgn(c) == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0)
        terms_.erase(it);
    }
  }

  BiPoly &operator+=(const BiPoly &o) {
    for (const auto &[e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }
  BiPoly &operator-=(const BiPoly &o) {
    for (const auto &[e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }
  BiPoly &operator*=(const Rational &s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[e, c] : terms_)
      c *= s;
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly &b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly &b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) { return a *= Rational(-1); }
  friend BiPoly operator*(BiPoly a, const Rational &s) { return a *= s; }
  friend BiPoly operator*(const Rational &s, BiPoly a) { return a *= s; }
  friend BiPoly operator*(const BiPoly &a, const BiPoly &b) {
    BiPoly out;
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_)
        out.add_term(ea + eb, ca * cb);
    return out;
  }
  BiPoly &operator*=(const BiPoly &o) { return *this = *this * o; }

  friend bool operator==(const BiPoly &a, const BiPoly &b) {
    return a.terms_ == b.terms_;
  }

private:
  Terms terms_;
};

enum class PolyOp { Add, Sub, Mul };

inline BiPoly poly_arith(const BiPoly &p, const BiPoly &q, PolyOp op) {
  switch (op) {
  case PolyOp::Add: return p + q;
  case PolyOp::Sub: return p - q;
  case PolyOp::Mul: return p * q;
  }
  return {};
}

/// Exponents with nonzero coefficient, ascending in deg-lex order.
inline std::vector<Exponent2> support(const BiPoly &f) {
  std::vector<Exponent2> out;
  out.reserve(f.terms().size());
  for (const auto &[e, c] : f.terms())
    out.push_back(e);
  return out;
}

/// f * x^a y^b.
inline BiPoly shift(const BiPoly &f, Exponent2 by) {
  BiPoly out;
  for (const auto &[e, c] : f.terms())
    out.add_term(e + by, c);
  return out;
}

/// dx^r dy^s applied to p.
inline BiPoly derivative(const BiPoly &p, Exponent2 order) {
  BiPoly out;
  for (const auto &[e, c] : p.terms()) {
    if (e.i < order.i || e.j < order.j)
      continue;
    Rational scale = c * Rational(falling_factorial(e.i, order.i) *
                                  falling_factorial(e.j, order.j));
    out.add_term(e - order, scale);
  }
  return out;
}

inline Rational power(const Rational &base, int exp) {
  Rational out = 1;
  for (int k = 0; k < exp; ++k)
    out *= base;
  return out;
}

inline Rational evaluate(const BiPoly &p, const Rational &x0, const Rational &y0) {
  Rational out = 0;
  for (const auto &[e, c] : p.terms())
    out += c * power(x0, e.i) * power(y0, e.j);
  return out;
}

/// p(x + dx, y + dy). Total degree is preserved.
inline BiPoly translate(const BiPoly &p, const Rational &dx, const Rational &dy) {
  BiPoly out;
  for (const auto &[e, c] : p.terms())
    for (int r = 0; r <= e.i; ++r)
      for (int s = 0; s <= e.j; ++s) {
        Rational scale = c * Rational(binomial(e.i, r) * binomial(e.j, s)) *
                         power(dx, e.i - r) * power(dy, e.j - s);
        out.add_term({r, s}, scale);
      }
  return out;
}

struct Division {
  BiPoly quotient;
  BiPoly remainder;
};

/// Division by a single polynomial under deg-lex: leading terms divisible by
/// lt(f) are cancelled, all others move to the remainder. A single polynomial
/// is a Groebner basis of its ideal, so the remainder is the unique normal
/// form modulo (f) and depends linearly on p.
inline Division divide(const BiPoly &p, const BiPoly &f) {
  if (f.is_zero())
    throw Error(ErrorKind::ZeroDivisor, "division by the zero polynomial");
  const Exponent2 lead = f.leading_exponent();
  const Rational lead_coeff = f.leading_coeff();
  Division out;
  BiPoly rest = p;
  while (!rest.is_zero()) {
    Exponent2 e = rest.leading_exponent();
    Rational c = rest.leading_coeff();
    if (lead.divides(e)) {
      Rational q = c / lead_coeff;
      out.quotient.add_term(e - lead, q);
      rest -= shift(f, e - lead) * q;
    } else {
      out.remainder.add_term(e, c);
      rest.add_term(e, -c);
    }
  }
  return out;
}

/// Quotient q with p = q f when p lies in (f); nullopt otherwise.
inline std::optional<BiPoly> divides(const BiPoly &f, const BiPoly &p) {
  auto [q, r] = divide(p, f);
  if (!r.is_zero())
    return std::nullopt;
  return q;
}

/// Delta_n = {(i, j) : i + j <= n}, enumerated in ascending deg-lex order.
struct DeltaSet {
  int n = -1;
  std::vector<Exponent2> members;

  std::size_t size() const { return members.size(); }
};

/// |Delta_n| = (n + 1)(n + 2)/2, and 0 for negative levels.
constexpr long delta_cardinality(int n) {
  return n < 0 ? 0 : static_cast<long>(n + 1) * (n + 2) / 2;
}

inline DeltaSet delta_set(int n) {
  DeltaSet out{n, {}};
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i <= d; ++i)
      out.members.push_back({i, d - i});
  return out;
}

/// Univariate Laurent polynomial in t.
class LaurentPoly {
public:
  using Terms = std::map<long, Rational>;

  LaurentPoly() = default;
  LaurentPoly(const Rational &constant) { add_term(0, constant); }
  LaurentPoly(long constant) : LaurentPoly(Rational(constant)) {}

  static LaurentPoly monomial(long e, const Rational &c = 1) {
    LaurentPoly p;
    p.add_term(e, c);
    return p;
  }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  /// Precondition: nonzero.
  long min_exponent() const { return terms_.begin()->first; }
  long max_exponent() const { return terms_.rbegin()->first; }

  void add_term(long e, const Rational &c) {
    if (sgn(c) == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0)
        terms_.erase(it);
    }
  }

  LaurentPoly &operator+=(const LaurentPoly &o) {
    for (const auto &[e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }
  LaurentPoly &operator-=(const LaurentPoly &o) {
    for (const auto &[e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }
  LaurentPoly &operator*=(const Rational &s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[e, c] : terms_)
      c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const Rational &s) { return a *= s; }
  friend LaurentPoly operator*(const Rational &s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
    LaurentPoly out;
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_)
        out.add_term(ea + eb, ca * cb);
    return out;
  }

  friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) {
    return a.terms_ == b.terms_;
  }

private:
  Terms terms_;
};

/// t^k p.
inline LaurentPoly shift(const LaurentPoly &p, long k) {
  LaurentPoly out;
  for (const auto &[e, c] : p.terms())
    out.add_term(e + k, c);
  return out;
}

/// (d/dt)^r p.
inline LaurentPoly derivative(const LaurentPoly &p, int r) {
  LaurentPoly out;
  for (const auto &[e, c] : p.terms())
    out.add_term(e - r, c * Rational(falling_factorial(e, r)));
  return out;
}

/// p(t^a, t^b).
inline LaurentPoly substitute(const BiPoly &p, int a, int b) {
  LaurentPoly out;
  for (const auto &[e, c] : p.terms())
    out.add_term(static_cast<long>(a) * e.i + static_cast<long>(b) * e.j, c);
  return out;
}

} // namespace weylkit
