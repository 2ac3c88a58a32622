#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/exact_linear.hpp"
#include "weylkit/idealizer.hpp"
#include "weylkit/poly.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

/// Linear functional on the unknowns a_pq of theta = sum a_pq dx^p dy^q,
/// keyed by (p, q) in deg-lex order so the leading unknown is the last entry.
using SparseRow = std::map<Exponent2, Rational, DegLexLess>;

struct TorsionOptions {
  /// Test hook applied to every assembled constraint row before it is used.
  std::function<void(Exponent2, SparseRow &)> row_hook;
};

/// Phi_ij(theta) = (theta * f x^i y^j)(0, 0)
///              = sum_{(a,b) in supp f} a_(a+i, b+j) (a+i)! (b+j)! f_ab,
/// restricted to unknowns with p + q <= n.
inline SparseRow phi_row(const CurvePoly &f, int i, int j, int n) {
  if (i < 0 || j < 0)
    throw Error(ErrorKind::InputError, "constraint index must be nonnegative");
  SparseRow row;
  for (const auto &[e, c] : f.poly().terms()) {
    Exponent2 unknown{e.i + i, e.j + j};
    if (unknown.degree() > n)
      continue;
    Rational v = c * Rational(factorial(unknown.i) * factorial(unknown.j));
    auto [it, inserted] = row.try_emplace(unknown, v);
    if (!inserted)
      it->second += v;
  }
  return row;
}

/// Column of a_pq among the unknowns of Delta_n (ascending deg-lex).
constexpr std::size_t delta_index(Exponent2 e) {
  return static_cast<std::size_t>(delta_cardinality(e.degree() - 1) + e.i);
}

/// Rows Phi_ij for i + j <= n; rows with i + j > n involve no unknown of
/// Delta_n and are omitted.
inline std::vector<std::pair<Exponent2, SparseRow>>
constraint_rows(const CurvePoly &f, int n, const TorsionOptions &opts = {}) {
  std::vector<std::pair<Exponent2, SparseRow>> rows;
  for (Exponent2 ij : delta_set(n).members) {
    SparseRow row = phi_row(f, ij.i, ij.j, n);
    if (opts.row_hook)
      opts.row_hook(ij, row);
    rows.emplace_back(ij, std::move(row));
  }
  return rows;
}

inline QVector dense(const SparseRow &row, int n) {
  QVector v(static_cast<std::size_t>(delta_cardinality(n)));
  for (const auto &[e, c] : row)
    if (e.degree() <= n)
      v[delta_index(e)] = c;
  return v;
}

/// Pure dx/dy operator with the given coordinates on Delta_n.
inline WeylOp d_polynomial(std::span<const Rational> coords, int n) {
  WeylOp op;
  for (Exponent2 e : delta_set(n).members)
    op.add_term(e, BiPoly(coords[delta_index(e)]));
  return op;
}

/// Coordinates of a pure dx/dy operator on Delta_n, or nullopt when it has a
/// nonconstant coefficient or exceeds degree n.
inline std::optional<QVector> d_coordinates(const WeylOp &op, int n) {
  QVector v(static_cast<std::size_t>(delta_cardinality(n)));
  for (const auto &[d, p] : op.terms()) {
    if (d.degree() > n || !p.is_constant())
      return std::nullopt;
    v[delta_index(d)] = p.constant_term();
  }
  return v;
}

/// M(n): dx/dy polynomials of degree <= n killed by every Phi_ij, i.e. the
/// classes theta with theta f in (x, y)A_2.
inline FilteredBasis m_basis(const CurvePoly &f, int n, const TorsionOptions &opts = {}) {
  if (n < 0)
    throw Error(ErrorKind::InputError, "negative level");
  const std::size_t cols = static_cast<std::size_t>(delta_cardinality(n));
  QMatrix system(0, cols);
  for (const auto &[ij, row] : constraint_rows(f, n, opts))
    system.append_row(dense(row, n));
  FilteredBasis out{n, {}};
  for (const auto &v : nullspace_basis(system))
    out.elements.push_back(d_polynomial(v, n));
  return out;
}

/// M(n) for the point (px, py) computed directly: every normal-form
/// coefficient of theta f must vanish at the point.
inline FilteredBasis point_module_basis(const CurvePoly &f, const Rational &px,
                                        const Rational &py, int n) {
  if (n < 0)
    throw Error(ErrorKind::InputError, "negative level");
  const auto unknowns = delta_set(n).members;
  const WeylOp fop(f.poly());
  std::map<Exponent2, QVector, DegLexLess> rows;
  for (std::size_t col = 0; col < unknowns.size(); ++col) {
    const WeylOp product = weyl_mul(WeylOp::derivation(unknowns[col]), fop);
    for (const auto &[d, p] : product.terms()) {
      auto [it, inserted] = rows.try_emplace(d, QVector(unknowns.size()));
      it->second[col] += evaluate(p, px, py);
    }
  }
  QMatrix system(0, unknowns.size());
  for (const auto &[d, row] : rows)
    system.append_row(row);
  FilteredBasis out{n, {}};
  for (const auto &v : nullspace_basis(system))
    out.elements.push_back(d_polynomial(v, n));
  return out;
}

/// The printed closed form n(n+1)/2 - (n-N)(n-N+1)/2, each triangle taken as
/// 0 at negative arguments. It undercounts |Delta_n| - |Delta_(n-N)| by N and
/// is reported only for comparison.
constexpr long printed_bound_expr(int n, int N) {
  auto tri = [](long k) { return k < 0 ? 0 : k * (k + 1) / 2; };
  return tri(n) - tri(n - N);
}

constexpr long cardinality_bound(int n, int N) {
  return delta_cardinality(n) - delta_cardinality(n - N);
}

struct BoundReport {
  int n = 0;
  std::size_t dim = 0;
  long bound_cardinality = 0;
  long bound_printed = 0;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

/// dim M(n) <= |Delta_n| - |Delta_(n-N)|. Vacuous for n < 0.
inline BoundReport bound_check(const CurvePoly &f, int n, const TorsionOptions &opts = {}) {
  BoundReport out;
  out.n = n;
  if (n < 0)
    return out;
  out.dim = m_basis(f, n, opts).dim();
  out.bound_cardinality = cardinality_bound(n, f.degree());
  out.bound_printed = printed_bound_expr(n, f.degree());
  if (static_cast<long>(out.dim) > out.bound_cardinality)
    out.violation = Violation{ErrorKind::BoundViolation,
                              "dim M(" + std::to_string(n) + ") = " + std::to_string(out.dim) +
                                  " exceeds " + std::to_string(out.bound_cardinality)};
  return out;
}

struct IndependenceReport {
  int n = 0;
  std::size_t rank = 0;
  std::size_t expected = 0;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

/// The rows Phi_ij with (i, j) in Delta_(n-N) are linearly independent.
inline IndependenceReport independence_check(const CurvePoly &f, int n,
                                             const TorsionOptions &opts = {}) {
  const int N = f.degree();
  if (n < N)
    throw Error(ErrorKind::InputError, "independence check needs n >= deg f");
  IndependenceReport out;
  out.n = n;
  out.expected = static_cast<std::size_t>(delta_cardinality(n - N));
  std::vector<QVector> rows;
  for (const auto &[ij, row] : constraint_rows(f, n, opts))
    if (ij.degree() <= n - N)
      rows.push_back(dense(row, n));
  out.rank = rank_of(rows, static_cast<std::size_t>(delta_cardinality(n)));
  if (out.rank != out.expected)
    out.violation = Violation{ErrorKind::IndependenceViolation,
                              "rank " + std::to_string(out.rank) + " of the full rows at n = " +
                                  std::to_string(n) + ", expected " + std::to_string(out.expected)};
  return out;
}

struct LeadingTermReport {
  int n = 0;
  Exponent2 lead00;
  std::size_t rows_checked = 0;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

/// For (i, j) in Delta_(n-N) the deg-lex leading unknown of Phi_ij is
/// (i, j) + the leading unknown of Phi_00.
inline LeadingTermReport leading_term_check(const CurvePoly &f, int n,
                                            const TorsionOptions &opts = {}) {
  const int N = f.degree();
  if (n < N)
    throw Error(ErrorKind::InputError, "leading-term check needs n >= deg f");
  LeadingTermReport out;
  out.n = n;
  auto rows = constraint_rows(f, n, opts);
  auto lead_of = [](const SparseRow &row) -> std::optional<Exponent2> {
    if (row.empty())
      return std::nullopt;
    return row.rbegin()->first;
  };
  auto base = lead_of(rows.front().second);
  if (!base) {
    out.violation = Violation{ErrorKind::LeadingTermViolation, "row (0,0) is zero"};
    return out;
  }
  out.lead00 = *base;
  for (const auto &[ij, row] : rows) {
    if (ij.degree() > n - N)
      continue;
    ++out.rows_checked;
    auto lead = lead_of(row);
    const Exponent2 expected = ij + *base;
    if (!lead || !(*lead == expected)) {
      std::string got = lead ? "(" + std::to_string(lead->i) + "," + std::to_string(lead->j) + ")"
                             : "none";
      out.violation = Violation{ErrorKind::LeadingTermViolation,
                                "row (" + std::to_string(ij.i) + "," + std::to_string(ij.j) +
                                    ") leads with " + got + ", expected (" +
                                    std::to_string(expected.i) + "," +
                                    std::to_string(expected.j) + ")"};
      return out;
    }
  }
  return out;
}

namespace detail {

/// Whether v lies in the row space of an rref'd matrix.
inline bool in_row_space(const RowEchelon &echelon, std::span<const Rational> v) {
  QVector rest(v.begin(), v.end());
  for (std::size_t k = 0; k < echelon.pivots.size(); ++k) {
    const Rational c = rest[echelon.pivots[k]];
    if (sgn(c) == 0)
      continue;
    auto row = echelon.reduced.row(k);
    for (std::size_t col = 0; col < rest.size(); ++col)
      if (sgn(row[col]) != 0)
        rest[col] -= c * row[col];
  }
  for (const auto &x : rest)
    if (sgn(x) != 0)
      return false;
  return true;
}

inline RowEchelon echelon_of(const FilteredBasis &basis, int n) {
  QMatrix m(0, static_cast<std::size_t>(delta_cardinality(n)));
  for (const auto &op : basis.elements)
    m.append_row(*d_coordinates(op, n));
  return rref(std::move(m));
}

} // namespace detail

struct FiltrationReport {
  int n = 0;
  int m = 0;
  std::size_t products_checked = 0;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

/// M(n) F_m inside M(n+m): each product theta g with theta in M(n) and g in
/// G_m is reduced modulo (x, y)A_2 and must lie in the span of M(n+m).
inline FiltrationReport filtration_action_check(const CurvePoly &f, int n, int m,
                                                const TorsionOptions &opts = {}) {
  if (n < 0 || m < 0)
    throw Error(ErrorKind::InputError, "negative level");
  FiltrationReport out;
  out.n = n;
  out.m = m;
  const auto left = m_basis(f, n, opts);
  const auto right = idealizer_filtered_basis(f, m);
  const auto target = detail::echelon_of(m_basis(f, n + m, opts), n + m);
  for (std::size_t a = 0; a < left.dim(); ++a)
    for (std::size_t b = 0; b < right.dim(); ++b) {
      ++out.products_checked;
      const WeylOp reduced = reduce_mod_origin(weyl_mul(left.elements[a], right.elements[b]));
      auto coords = d_coordinates(reduced, n + m);
      if (!coords || !detail::in_row_space(target, *coords)) {
        out.violation = Violation{ErrorKind::FiltrationViolation,
                                  "product of M(" + std::to_string(n) + ") element " +
                                      std::to_string(a) + " with G_" + std::to_string(m) +
                                      " element " + std::to_string(b) + " leaves M(" +
                                      std::to_string(n + m) + ")"};
        return out;
      }
    }
  return out;
}

struct GrowthRecord {
  int n = 0;
  std::size_t dim = 0;
  long bound_cardinality = 0;
  long bound_printed = 0;
};

struct GrowthTable {
  std::vector<GrowthRecord> records;
  /// Least n1 from which the first differences of dim are constant over the
  /// computed range.
  int stable_from = 0;
  /// That constant difference; nullopt when fewer than two levels exist.
  std::optional<long> slope;
};

inline GrowthTable growth_table(const CurvePoly &f, int n_max, const TorsionOptions &opts = {}) {
  if (n_max < 0)
    throw Error(ErrorKind::InputError, "negative level");
  GrowthTable out;
  for (int n = 0; n <= n_max; ++n)
    out.records.push_back({n, m_basis(f, n, opts).dim(), cardinality_bound(n, f.degree()),
                           printed_bound_expr(n, f.degree())});
  if (n_max == 0)
    return out;
  auto diff = [&](int k) {
    return static_cast<long>(out.records[k + 1].dim) - static_cast<long>(out.records[k].dim);
  };
  out.slope = diff(n_max - 1);
  out.stable_from = n_max - 1;
  while (out.stable_from > 0 && diff(out.stable_from - 1) == *out.slope)
    --out.stable_from;
  return out;
}

struct ProbeAttempt {
  int n0 = 0;
  /// generated[m-1]: whether M(n0) G_m + M(n0+m-1) spans M(n0+m).
  std::vector<bool> generated;

  bool passed() const {
    for (bool g : generated)
      if (!g)
        return false;
    return true;
  }
};

struct ProbeReport {
  int m_max = 0;
  std::vector<ProbeAttempt> attempts;
  std::optional<int> witness;
};

/// Empirical finite-generation probe. For n0 = 0..n0_cap, checks whether the
/// reductions of M(n0) G_m together with M(n0+m-1) span M(n0+m) for
/// m = 1..m_max and reports the least n0 where every m succeeds. A failure is
/// not a counterexample to finite generation.
inline ProbeReport generation_probe(const CurvePoly &f, int n0_cap, int m_max,
                                    const TorsionOptions &opts = {}) {
  if (n0_cap < 0 || m_max < 0)
    throw Error(ErrorKind::InputError, "negative level");
  ProbeReport out;
  out.m_max = m_max;
  std::vector<FilteredBasis> idealizer;
  for (int m = 1; m <= m_max; ++m)
    idealizer.push_back(idealizer_filtered_basis(f, m));

  for (int n0 = 0; n0 <= n0_cap && !out.witness; ++n0) {
    ProbeAttempt attempt{n0, {}};
    const auto base = m_basis(f, n0, opts);
    for (int m = 1; m <= m_max; ++m) {
      const int top = n0 + m;
      std::vector<QVector> span;
      const auto below = m_basis(f, top - 1, opts);
      for (const auto &op : below.elements)
        span.push_back(*d_coordinates(op, top));
      for (const auto &theta : base.elements)
        for (const auto &g : idealizer[m - 1].elements)
          if (auto v = d_coordinates(reduce_mod_origin(weyl_mul(theta, g)), top))
            span.push_back(std::move(*v));
      const auto want = m_basis(f, top, opts).dim();
      attempt.generated.push_back(
          rank_of(span, static_cast<std::size_t>(delta_cardinality(top))) == want);
    }
    if (attempt.passed())
      out.witness = n0;
    out.attempts.push_back(std::move(attempt));
  }
  return out;
}

/// Growth table of ((x - px, y - py)A_2 : fA_2)/(x - px, y - py)A_2, computed
/// on the translate f(x + px, y + py) at the origin and cross-checked level by
/// level against the direct computation at the point.
inline GrowthTable point_module_dims(const CurvePoly &f, const Rational &px, const Rational &py,
                                     int n_max, const TorsionOptions &opts = {}) {
  const CurvePoly moved(translate(f.poly(), px, py));
  GrowthTable table = growth_table(moved, n_max, opts);
  for (const auto &rec : table.records) {
    const auto direct = point_module_basis(f, px, py, rec.n).dim();
    if (direct != rec.dim)
      throw Error(ErrorKind::TranslationMismatch,
                  "level " + std::to_string(rec.n) + ": translated " + std::to_string(rec.dim) +
                      ", direct " + std::to_string(direct));
  }
  return table;
}

} // namespace weylkit
