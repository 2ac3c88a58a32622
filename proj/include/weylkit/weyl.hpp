#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "weylkit/exact_linear.hpp"
#include "weylkit/poly.hpp"

namespace weylkit {

/// Element of the second Weyl algebra in normal form
///   sum p_cd(x, y) dx^c dy^d
/// with polynomial coefficients written to the left. Keys are the
/// dx/dy exponents; no stored coefficient is zero, so the term map is
/// unique and equality of operators is equality of maps.
class WeylOp {
public:
  using Terms = std::map<Exponent2, BiPoly, DegLexLess>;

  WeylOp() = default;
  WeylOp(const BiPoly &p) { add_term({0, 0}, p); }
  WeylOp(const Rational &c) : WeylOp(BiPoly(c)) {}
  WeylOp(long c) : WeylOp(BiPoly(c)) {}

  static WeylOp derivation(Exponent2 d, const BiPoly &coeff = BiPoly(1)) {
    WeylOp op;
    op.add_term(d, coeff);
    return op;
  }
  static WeylOp x() { return WeylOp(BiPoly::x()); }
  static WeylOp y() { return WeylOp(BiPoly::y()); }
  static WeylOp dx() { return derivation({1, 0}); }
  static WeylOp dy() { return derivation({0, 1}); }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BiPoly coeff(Exponent2 d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? BiPoly() : it->second;
  }

  void add_term(Exponent2 d, const BiPoly &p) {
    if (p.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(d, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  /// Highest dx/dy degree; -1 for the zero operator.
  int order() const {
    int best = -1;
    for (const auto &[d, p] : terms_)
      best = std::max(best, d.degree());
    return best;
  }

  /// Least n with this operator in B_n.
  int bernstein_degree() const {
    if (is_zero())
      throw Error(ErrorKind::ZeroOperator, "Bernstein degree of the zero operator");
    int best = 0;
    for (const auto &[d, p] : terms_)
      best = std::max(best, d.degree() + p.total_degree());
    return best;
  }

  WeylOp &operator+=(const WeylOp &o) {
    for (const auto &[d, p] : o.terms_)
      add_term(d, p);
    return *this;
  }
  WeylOp &operator-=(const WeylOp &o) {
    for (const auto &[d, p] : o.terms_)
      add_term(d, -p);
    return *this;
  }
  WeylOp &operator*=(const Rational &s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[d, p] : terms_)
      p *= s;
    return *this;
  }

  friend WeylOp operator+(WeylOp a, const WeylOp &b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp &b) { return a -= b; }
  friend WeylOp operator-(WeylOp a) { return a *= Rational(-1); }
  friend WeylOp operator*(WeylOp a, const Rational &s) { return a *= s; }
  friend WeylOp operator*(const Rational &s, WeylOp a) { return a *= s; }

  friend bool operator==(const WeylOp &a, const WeylOp &b) {
    return a.terms_ == b.terms_;
  }

private:
  Terms terms_;
};

/// Left multiplication by a polynomial acts coefficientwise in normal form.
inline WeylOp left_multiply(const BiPoly &p, const WeylOp &op) {
  WeylOp out;
  for (const auto &[d, q] : op.terms())
    out.add_term(d, p * q);
  return out;
}

/// Normal-form product. Each dx^c dy^d is moved right across the coefficient
/// of the right factor with the Leibniz rule
///   dx^c dy^d q = sum_{r,s} C(c,r) C(d,s) (dx^r dy^s q) dx^(c-r) dy^(d-s).
inline WeylOp weyl_mul(const WeylOp &lhs, const WeylOp &rhs) {
  WeylOp out;
  for (const auto &[d1, p] : lhs.terms())
    for (const auto &[d2, q] : rhs.terms())
      for (int r = 0; r <= d1.i; ++r)
        for (int s = 0; s <= d1.j; ++s) {
          BiPoly dq = derivative(q, {r, s});
          if (dq.is_zero())
            continue;
          Rational scale(binomial(d1.i, r) * binomial(d1.j, s));
          out.add_term({d1.i - r + d2.i, d1.j - s + d2.j}, p * dq * scale);
        }
  return out;
}

inline WeylOp operator*(const WeylOp &a, const WeylOp &b) { return weyl_mul(a, b); }

/// theta * p: dx, dy act as partial derivatives, polynomials by multiplication.
inline BiPoly act(const WeylOp &op, const BiPoly &p) {
  BiPoly out;
  for (const auto &[d, q] : op.terms())
    out += q * derivative(p, d);
  return out;
}

inline int bernstein_degree(const WeylOp &op) { return op.bernstein_degree(); }

/// Class modulo the right ideal (x, y)A_2: keeps the constant part of each
/// normal-form coefficient, identifying A_2/(x,y)A_2 with k[dx, dy].
inline WeylOp reduce_mod_origin(const WeylOp &op) {
  WeylOp out;
  for (const auto &[d, p] : op.terms())
    out.add_term(d, BiPoly(p.constant_term()));
  return out;
}

/// x^x y^y dx^dx dy^dy.
struct WeylMonomial {
  int x = 0;
  int y = 0;
  int dx = 0;
  int dy = 0;

  constexpr int degree() const { return x + y + dx + dy; }
  friend constexpr bool operator==(WeylMonomial, WeylMonomial) = default;

  WeylOp to_op(const Rational &c = 1) const {
    return WeylOp::derivation({dx, dy}, BiPoly::monomial({x, y}, c));
  }
};

/// Monomial basis of B_n = span{x^i y^j dx^k dy^l : i+j+k+l <= n}.
struct BernsteinLevel {
  int n = 0;
  std::vector<WeylMonomial> monomials;

  std::size_t size() const { return monomials.size(); }
};

/// dim B_m = C(m+4, 4), and 0 for negative m.
inline long bernstein_dim(int m) {
  return m < 0 ? 0 : binomial(m + 4, 4).get_si();
}

/// Ascending total degree; within a degree, lexicographically descending in
/// (x, y, dx, dy), so level 1 reads 1, x, y, dx, dy.
inline BernsteinLevel bernstein_basis(int n) {
  if (n < 0)
    throw Error(ErrorKind::InputError, "negative Bernstein level");
  BernsteinLevel out{n, {}};
  for (int deg = 0; deg <= n; ++deg)
    for (int a = deg; a >= 0; --a)
      for (int b = deg - a; b >= 0; --b)
        for (int c = deg - a - b; c >= 0; --c)
          out.monomials.push_back({a, b, c, deg - a - b - c});
  return out;
}

inline WeylOp combine(const BernsteinLevel &level, std::span<const Rational> coeffs) {
  WeylOp out;
  for (std::size_t k = 0; k < level.size(); ++k)
    if (sgn(coeffs[k]) != 0)
      out += level.monomials[k].to_op(coeffs[k]);
  return out;
}

/// Coefficient vector of op on the monomial basis of `level`. Throws if op
/// does not lie in B_n.
inline QVector coordinates(const WeylOp &op, const BernsteinLevel &level) {
  QVector out(level.size());
  std::size_t found = 0;
  for (std::size_t k = 0; k < level.size(); ++k) {
    const auto &m = level.monomials[k];
    out[k] = op.coeff({m.dx, m.dy}).coeff({m.x, m.y});
    if (sgn(out[k]) != 0)
      ++found;
  }
  std::size_t total = 0;
  for (const auto &[d, p] : op.terms())
    total += p.terms().size();
  if (found != total)
    throw Error(ErrorKind::InputError, "operator exceeds Bernstein level");
  return out;
}

} // namespace weylkit
