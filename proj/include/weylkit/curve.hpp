#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/exact_linear.hpp"
#include "weylkit/idealizer.hpp"
#include "weylkit/poly.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

/// The numerical semigroup <a, b> with gcd(a, b) = 1.
class NumericalSemigroup {
public:
  NumericalSemigroup(int a, int b) : a_(a), b_(b) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1)
      throw Error(ErrorKind::InputError, "semigroup generators must be coprime and >= 2");
  }

  int a() const { return a_; }
  int b() const { return b_; }
  /// Largest gap.
  long frobenius() const { return static_cast<long>(a_) * b_ - a_ - b_; }
  /// Least element beyond every gap.
  long conductor() const { return static_cast<long>(a_ - 1) * (b_ - 1); }

  /// (u, v) with u a + v b = s, u minimal, when s is a member.
  std::optional<std::pair<long, long>> witness(long s) const {
    if (s < 0)
      return std::nullopt;
    for (long u = 0; u * a_ <= s; ++u)
      if ((s - u * a_) % b_ == 0)
        return std::pair{u, (s - u * a_) / b_};
    return std::nullopt;
  }
  bool contains(long s) const { return witness(s).has_value(); }

  /// Members in increasing order starting at `from`.
  std::vector<long> members_from(long from, std::size_t count) const {
    std::vector<long> out;
    for (long s = std::max(from, 0L); out.size() < count; ++s)
      if (contains(s))
        out.push_back(s);
    return out;
  }

private:
  int a_;
  int b_;
};

inline bool semigroup_member(const NumericalSemigroup &S, long s) {
  return S.contains(s);
}

/// y^a = x^b with 2 <= a < b coprime, normalized by t -> (t^a, t^b).
class MonomialCurve {
public:
  MonomialCurve(int a, int b) : semigroup_(a, b), f_(make_poly(a, b)) {
    if (b <= a)
      throw Error(ErrorKind::InputError, "monomial curve needs a < b");
  }

  int a() const { return semigroup_.a(); }
  int b() const { return semigroup_.b(); }
  const NumericalSemigroup &semigroup() const { return semigroup_; }
  const CurvePoly &curve() const { return f_; }
  const BiPoly &poly() const { return f_.poly(); }

  /// p(t^a, t^b).
  LaurentPoly pullback(const BiPoly &p) const { return substitute(p, a(), b()); }

private:
  static CurvePoly make_poly(int a, int b) {
    return CurvePoly(BiPoly::monomial({0, a}) - BiPoly::monomial({b, 0}));
  }

  NumericalSemigroup semigroup_;
  CurvePoly f_;
};

/// Differential operator sum a_i(t) dt^i with Laurent coefficients.
class TOperator {
public:
  using Terms = std::map<int, LaurentPoly>;

  TOperator() = default;
  TOperator(const LaurentPoly &a0) { add_term(0, a0); }

  static TOperator term(int order, const LaurentPoly &coeff) {
    TOperator op;
    op.add_term(order, coeff);
    return op;
  }
  static TOperator dt() { return term(1, LaurentPoly(1)); }
  static TOperator t_power(long e) { return TOperator(LaurentPoly::monomial(e)); }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coeff(int i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  /// -1 for the zero operator.
  int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  /// max(0, -lowest exponent over all coefficients).
  long pole_order() const {
    long k = 0;
    for (const auto &[i, c] : terms_)
      k = std::max(k, -c.min_exponent());
    return k;
  }

  void add_term(int i, const LaurentPoly &c) {
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  TOperator &operator+=(const TOperator &o) {
    for (const auto &[i, c] : o.terms_)
      add_term(i, c);
    return *this;
  }
  TOperator &operator-=(const TOperator &o) {
    for (const auto &[i, c] : o.terms_)
      add_term(i, -c);
    return *this;
  }
  TOperator &operator*=(const Rational &s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[i, c] : terms_)
      c *= s;
    return *this;
  }
  friend TOperator operator+(TOperator a, const TOperator &b) { return a += b; }
  friend TOperator operator-(TOperator a, const TOperator &b) { return a -= b; }
  friend TOperator operator*(TOperator a, const Rational &s) { return a *= s; }
  friend TOperator operator*(const Rational &s, TOperator a) { return a *= s; }

  friend bool operator==(const TOperator &a, const TOperator &b) {
    return a.terms_ == b.terms_;
  }

private:
  Terms terms_;
};

/// D applied to a Laurent polynomial; negative exponents use the same
/// falling-factorial rule.
inline LaurentPoly apply(const TOperator &D, const LaurentPoly &p) {
  LaurentPoly out;
  for (const auto &[i, a] : D.terms())
    out += a * derivative(p, i);
  return out;
}

/// D * t^s = sum_i a_i(t) s(s-1)...(s-i+1) t^(s-i).
inline LaurentPoly t_act(const TOperator &D, long s) {
  if (s < 0)
    throw Error(ErrorKind::InputError, "t_act needs a nonnegative exponent");
  return apply(D, LaurentPoly::monomial(s));
}

/// D o E via dt^i b = sum_r C(i, r) b^(r) dt^(i-r).
inline TOperator compose(const TOperator &D, const TOperator &E) {
  TOperator out;
  for (const auto &[i, a] : D.terms())
    for (const auto &[j, b] : E.terms())
      for (int r = 0; r <= i; ++r) {
        LaurentPoly db = derivative(b, r);
        if (db.is_zero())
          continue;
        out.add_term(i - r + j, a * db * Rational(binomial(i, r)));
      }
  return out;
}

/// Whether D maps k[t^a, t^b] into itself. For s in S every exponent of
/// D * t^s is at least s - order(D) - K(D), with K the pole order; once that
/// reaches the conductor all exponents lie in S. Hence it suffices to check
/// members s < conductor + order + K.
inline bool preserves_ring(const TOperator &D, const NumericalSemigroup &S) {
  if (D.is_zero())
    return true;
  const long bound = S.conductor() + D.order() + D.pole_order();
  for (long s = 0; s <= bound; ++s) {
    if (!S.contains(s))
      continue;
    const LaurentPoly image = t_act(D, s);
    for (const auto &[e, c] : image.terms())
      if (!S.contains(e))
        return false;
  }
  return true;
}

/// Basis of the operators of order <= max_order whose coefficients have
/// exponents in [-pole_window, upper_window] and which preserve k[t^a, t^b].
/// Unknowns are the coefficients u_(i,e) of t^e dt^i; each member s below
/// the preservation bound contributes one row per output exponent outside S.
inline std::vector<TOperator> dmod_box_basis(const NumericalSemigroup &S, int max_order,
                                             long pole_window, long upper_window) {
  if (max_order < 0 || pole_window < 0 || upper_window < 0)
    throw Error(ErrorKind::InputError, "box parameters must be nonnegative");
  struct Unknown {
    int order;
    long exponent;
  };
  std::vector<Unknown> unknowns;
  for (int i = 0; i <= max_order; ++i)
    for (long e = -pole_window; e <= upper_window; ++e)
      unknowns.push_back({i, e});

  std::map<std::pair<long, long>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  const long bound = S.conductor() + max_order + pole_window;
  for (long s = 0; s <= bound; ++s) {
    if (!S.contains(s))
      continue;
    for (std::size_t col = 0; col < unknowns.size(); ++col) {
      const auto [i, e] = unknowns[col];
      Integer ff = falling_factorial(s, i);
      const long out_exp = e + s - i;
      if (ff == 0 || S.contains(out_exp))
        continue;
      auto [it, inserted] = row_of.try_emplace({s, out_exp}, rows.size());
      if (inserted)
        rows.emplace_back();
      rows[it->second].emplace_back(col, Rational(ff));
    }
  }
  QMatrix system(rows.size(), unknowns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto &[col, c] : rows[r])
      system(r, col) += c;

  std::vector<TOperator> out;
  for (const auto &v : nullspace_basis(system)) {
    TOperator D;
    for (std::size_t col = 0; col < unknowns.size(); ++col)
      D.add_term(unknowns[col].order, LaurentPoly::monomial(unknowns[col].exponent, v[col]));
    out.push_back(std::move(D));
  }
  return out;
}

/// Image of theta's class under the idealizer quotient -> D(X): the operator
/// D with D * t^s = (theta * x^u y^v)(t^a, t^b) for u a + v b = s.
///
/// Writing D = sum_i b_i(t) t^i dt^i gives t^-s (D * t^s) = sum_i b_i(t) s^(i),
/// so sampling d + 1 members s_k >= conductor (d the Bernstein degree of
/// theta, which bounds the order) yields a falling-factorial system that is
/// invertible for distinct s_k. The solution is checked on three further
/// members.
inline TOperator project_class(const WeylOp &theta, const MonomialCurve &C) {
  if (!idealizer_member(theta, C.curve()))
    throw Error(ErrorKind::NotInIdealizer, "operator does not idealize fA_2");
  if (theta.is_zero())
    return {};
  const int d = theta.bernstein_degree();
  const auto &S = C.semigroup();
  const auto samples = S.members_from(S.conductor(), static_cast<std::size_t>(d) + 4);

  auto image_of = [&](long s) {
    auto [u, v] = *S.witness(s);
    BiPoly mono = BiPoly::monomial({static_cast<int>(u), static_cast<int>(v)});
    return C.pullback(act(theta, mono));
  };

  // Columns: unknown b_i for i = 0..d, then one right-hand side per exponent.
  std::vector<LaurentPoly> rhs;
  std::map<long, std::size_t> rhs_col;
  for (int k = 0; k <= d; ++k) {
    rhs.push_back(shift(image_of(samples[k]), -samples[k]));
    for (const auto &[e, c] : rhs.back().terms())
      rhs_col.try_emplace(e, 0);
  }
  std::size_t next = 0;
  for (auto &[e, col] : rhs_col)
    col = static_cast<std::size_t>(d) + 1 + next++;

  QMatrix system(static_cast<std::size_t>(d) + 1, static_cast<std::size_t>(d) + 1 + rhs_col.size());
  for (int k = 0; k <= d; ++k) {
    for (int i = 0; i <= d; ++i)
      system(k, i) = Rational(falling_factorial(samples[k], i));
    for (const auto &[e, c] : rhs[k].terms())
      system(k, rhs_col.at(e)) = c;
  }
  auto [reduced, pivots] = rref(std::move(system));
  if (pivots.size() != static_cast<std::size_t>(d) + 1 ||
      pivots.back() != static_cast<std::size_t>(d))
    throw Error(ErrorKind::InconsistentProjection, "singular sampling system");

  TOperator D;
  for (int i = 0; i <= d; ++i) {
    LaurentPoly b;
    for (const auto &[e, col] : rhs_col)
      b.add_term(e, reduced(i, col));
    D.add_term(i, shift(b, i));
  }

  for (std::size_t k = static_cast<std::size_t>(d) + 1; k < samples.size(); ++k)
    if (!(t_act(D, samples[k]) == image_of(samples[k])))
      throw Error(ErrorKind::InconsistentProjection,
                  "projection disagrees at t^" + std::to_string(samples[k]));
  return D;
}

struct CorrespondenceReport {
  int level = 0;
  std::size_t basis_dim = 0;
  std::size_t image_dim = 0;
  std::size_t quotient_dim = 0;
  std::vector<TOperator> images;
  std::optional<Violation> violation;

  bool passed() const { return !violation.has_value(); }
};

/// Coefficient vectors of operators over a shared (order, exponent) index.
inline std::size_t operator_span_dim(const std::vector<TOperator> &ops) {
  std::map<std::pair<int, long>, std::size_t> col_of;
  for (const auto &D : ops)
    for (const auto &[i, c] : D.terms())
      for (const auto &[e, v] : c.terms())
        col_of.try_emplace({i, e}, 0);
  std::size_t next = 0;
  for (auto &[key, col] : col_of)
    col = next++;
  QMatrix m(ops.size(), col_of.size());
  for (std::size_t r = 0; r < ops.size(); ++r)
    for (const auto &[i, c] : ops[r].terms())
      for (const auto &[e, v] : c.terms())
        m(r, col_of.at({i, e})) = v;
  return rank(m);
}

/// Projects a basis of G_n and compares the span of the images with dim F_n.
/// Equality means the induced map F_n -> D(X) is injective.
inline CorrespondenceReport correspondence_check(const MonomialCurve &C, int n) {
  CorrespondenceReport out;
  out.level = n;
  const auto basis = idealizer_filtered_basis(C.curve(), n);
  out.basis_dim = basis.dim();
  out.quotient_dim = basis.dim() - static_cast<std::size_t>(bernstein_dim(n - C.curve().degree()));
  for (const auto &theta : basis.elements) {
    out.images.push_back(project_class(theta, C));
    if (!out.violation && !preserves_ring(out.images.back(), C.semigroup()))
      out.violation = Violation{ErrorKind::CorrespondenceViolation,
                                "projected class does not preserve k[t^a, t^b]"};
  }
  out.image_dim = operator_span_dim(out.images);
  if (!out.violation && out.image_dim != out.quotient_dim)
    out.violation = Violation{ErrorKind::CorrespondenceViolation,
                              "image dimension " + std::to_string(out.image_dim) +
                                  " differs from quotient dimension " +
                                  std::to_string(out.quotient_dim)};
  return out;
}

} // namespace weylkit
