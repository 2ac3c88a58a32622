#pragma once

// Text grammar shared by the CLI and test fixtures.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := integer ['/' integer] | var ['^' ['-'] integer]
//
// Variables: x, y (polynomials); t (Laurent, negative exponents allowed);
// x, y, dx, dy (Weyl operators); t, dt (operators on k[t, 1/t]).
// Factors of a term multiply left to right in the target algebra, so
// "dx*x" denotes x*dx + 1.

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weylkit/curve.hpp"
#include "weylkit/poly.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

namespace detail {

struct BiPolyAlgebra {
  using Value = BiPoly;
  static constexpr std::string_view vars[] = {"x", "y"};
  static Value scalar(const Rational &c) { return BiPoly(c); }
  static Value variable(std::string_view v, long k) {
    return BiPoly::monomial(v == "x" ? Exponent2{int(k), 0} : Exponent2{0, int(k)});
  }
  static bool allows_negative(std::string_view) { return false; }
  static Value mul(const Value &a, const Value &b) { return a * b; }
};

struct LaurentAlgebra {
  using Value = LaurentPoly;
  static constexpr std::string_view vars[] = {"t"};
  static Value scalar(const Rational &c) { return LaurentPoly(c); }
  static Value variable(std::string_view, long k) { return LaurentPoly::monomial(k); }
  static bool allows_negative(std::string_view) { return true; }
  static Value mul(const Value &a, const Value &b) { return a * b; }
};

struct WeylAlgebra {
  using Value = WeylOp;
  static constexpr std::string_view vars[] = {"dx", "dy", "x", "y"};
  static Value scalar(const Rational &c) { return WeylOp(c); }
  static Value variable(std::string_view v, long k) {
    const int e = static_cast<int>(k);
    if (v == "x") return WeylOp(BiPoly::monomial({e, 0}));
    if (v == "y") return WeylOp(BiPoly::monomial({0, e}));
    if (v == "dx") return WeylOp::derivation({e, 0});
    return WeylOp::derivation({0, e});
  }
  static bool allows_negative(std::string_view) { return false; }
  static Value mul(const Value &a, const Value &b) { return weyl_mul(a, b); }
};

struct TOperatorAlgebra {
  using Value = TOperator;
  static constexpr std::string_view vars[] = {"dt", "t"};
  static Value scalar(const Rational &c) { return TOperator(LaurentPoly(c)); }
  static Value variable(std::string_view v, long k) {
    if (v == "t") return TOperator::t_power(k);
    return TOperator::term(static_cast<int>(k), LaurentPoly(1));
  }
  static bool allows_negative(std::string_view v) { return v == "t"; }
  static Value mul(const Value &a, const Value &b) { return compose(a, b); }
};

template <class Algebra>
class Parser {
public:
  using Value = typename Algebra::Value;

  explicit Parser(std::string_view text) : text_(text) {}

  Value parse() {
    skip();
    if (at_end())
      fail("empty expression");
    Value total;
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = get() == '-';
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Value t = term();
      if (negative)
        t = Algebra::mul(Algebra::scalar(-1), t);
      total += t;
      first = false;
      skip();
    }
    return total;
  }

private:
  Value term() {
    Value acc = factor();
    for (;;) {
      skip();
      if (at_end() || peek() == '+' || peek() == '-')
        return acc;
      if (peek() == '*') {
        get();
        skip();
      }
      acc = Algebra::mul(acc, factor());
    }
  }

  Value factor() {
    skip();
    if (at_end())
      fail("expected a factor");
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (!at_end() && peek() == '/') {
        get();
        std::string den = digits();
        return Algebra::scalar(parse_rational(num + "/" + den));
      }
      return Algebra::scalar(parse_rational(num));
    }
    for (std::string_view v : Algebra::vars)
      if (text_.substr(pos_, v.size()) == v) {
        pos_ += v.size();
        long k = 1;
        skip();
        if (!at_end() && peek() == '^') {
          get();
          skip();
          bool negative = false;
          if (!at_end() && peek() == '-') {
            negative = true;
            get();
          }
          if (negative && !Algebra::allows_negative(v))
            fail("negative exponent on " + std::string(v));
          std::string ds = digits();
          if (ds.size() > 6)
            fail("exponent too large");
          k = std::stol(ds);
          if (negative)
            k = -k;
        }
        return Algebra::variable(v, k);
      }
    fail("unexpected '" + std::string(1, peek()) + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
    if (start == pos_)
      fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string &what) const {
    throw Error(ErrorKind::InputError,
                what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string power_str(std::string_view var, long k) {
  if (k == 0)
    return "";
  std::string s(var);
  if (k != 1)
    s += "^" + std::to_string(k);
  return s;
}

inline std::string join_factors(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto &p : parts) {
    if (p.empty())
      continue;
    if (!out.empty())
      out += "*";
    out += p;
  }
  return out;
}

/// Renders (coefficient, monomial) pairs in the given order.
inline std::string render_terms(const std::vector<std::pair<Rational, std::string>> &terms) {
  if (terms.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[c, mono] : terms) {
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
    first = false;
  }
  return out;
}

inline std::string xy_monomial(Exponent2 e) {
  return join_factors({power_str("x", e.i), power_str("y", e.j)});
}

} // namespace detail

inline BiPoly parse_bipoly(std::string_view text) {
  return detail::Parser<detail::BiPolyAlgebra>(text).parse();
}
inline LaurentPoly parse_laurent(std::string_view text) {
  return detail::Parser<detail::LaurentAlgebra>(text).parse();
}
inline WeylOp parse_weyl(std::string_view text) {
  return detail::Parser<detail::WeylAlgebra>(text).parse();
}
inline TOperator parse_toperator(std::string_view text) {
  return detail::Parser<detail::TOperatorAlgebra>(text).parse();
}

/// Terms in descending deg-lex order, e.g. "-x^3 + y^2".
inline std::string to_string(const BiPoly &p) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.emplace_back(it->second, detail::xy_monomial(it->first));
  return detail::render_terms(terms);
}

inline std::string to_string(const LaurentPoly &p) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.emplace_back(it->second, detail::power_str("t", it->first));
  return detail::render_terms(terms);
}

/// Highest dx/dy monomial first, coefficients expanded, e.g. "x*dx + 1".
inline std::string to_string(const WeylOp &op) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const Exponent2 d = it->first;
    const auto &coeffs = it->second.terms();
    for (auto ct = coeffs.rbegin(); ct != coeffs.rend(); ++ct)
      terms.emplace_back(ct->second, detail::join_factors({detail::xy_monomial(ct->first),
                                                           detail::power_str("dx", d.i),
                                                           detail::power_str("dy", d.j)}));
  }
  return detail::render_terms(terms);
}

/// Highest order first, e.g. "dt^2 - 2*t^-1*dt".
inline std::string to_string(const TOperator &op) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto &coeffs = it->second.terms();
    for (auto ct = coeffs.rbegin(); ct != coeffs.rend(); ++ct)
      terms.emplace_back(ct->second, detail::join_factors({detail::power_str("t", ct->first),
                                                           detail::power_str("dt", it->first)}));
  }
  return detail::render_terms(terms);
}

inline std::string to_string(Exponent2 e) {
  return "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
}

} // namespace weylkit
