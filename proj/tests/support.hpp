#pragma once

// Test-only generators and brute-force oracles. The oracles deliberately go
// through the action of operators on polynomials (act, divide, evaluate) and
// never through normal-form products or the constraint rows they check.

#include <random>
#include <vector>

#include "weylkit/weylkit.hpp"

namespace weylkit::fixtures {

inline Rational random_coeff(std::mt19937 &rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  Rational c = make_rational(num(rng), den(rng));
  return c == 0 ? Rational(1) : c;
}

inline BiPoly random_bipoly(std::mt19937 &rng, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  BiPoly p;
  for (int k = 0; k < terms; ++k) {
    int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    int i = split(rng);
    p.add_term({i, d - i}, random_coeff(rng));
  }
  return p;
}

inline BiPoly random_nonzero_bipoly(std::mt19937 &rng, int max_deg, int terms) {
  for (;;)
    if (auto p = random_bipoly(rng, max_deg, terms); !p.is_zero())
      return p;
}

/// Random operator of Bernstein degree <= max_deg.
inline WeylOp random_weyl(std::mt19937 &rng, int max_deg, int terms) {
  const auto level = bernstein_basis(max_deg);
  std::uniform_int_distribution<std::size_t> pick(0, level.size() - 1);
  WeylOp op;
  for (int k = 0; k < terms; ++k)
    op += level.monomials[pick(rng)].to_op(random_coeff(rng));
  return op;
}

inline WeylOp random_nonzero_weyl(std::mt19937 &rng, int max_deg, int terms) {
  for (;;)
    if (auto op = random_weyl(rng, max_deg, terms); !op.is_zero())
      return op;
}

/// dim of the idealizer inside B_n computed from the action: theta idealizes
/// fA_2 iff theta * (f x^i y^j) lies in (f) for every monomial, and for an
/// operator of order <= n monomials with i + j <= n already decide it.
inline std::size_t oracle_idealizer_dim(const BiPoly &f, int n) {
  const auto level = bernstein_basis(n);
  std::map<std::array<int, 4>, QVector> rows;
  for (std::size_t col = 0; col < level.size(); ++col) {
    const WeylOp m = level.monomials[col].to_op();
    for (Exponent2 e : delta_set(n).members) {
      const BiPoly image = act(m, shift(f, e));
      const BiPoly rem = divide(image, f).remainder;
      for (const auto &[r, c] : rem.terms()) {
        auto [it, ins] = rows.try_emplace({e.i, e.j, r.i, r.j}, QVector(level.size()));
        it->second[col] += c;
      }
    }
  }
  QMatrix system(0, level.size());
  for (const auto &[key, row] : rows)
    system.append_row(row);
  return level.size() - rank(system);
}

/// dim M(n) from the definition: theta = sum a_pq dx^p dy^q with p + q <= n
/// and (theta * f x^i y^j)(0, 0) = 0 for all i, j. Monomials with
/// i + j > n contribute nothing, but the oracle samples up to n + deg f.
inline std::size_t oracle_m_dim(const BiPoly &f, int n) {
  const auto unknowns = delta_set(n).members;
  QMatrix system(0, unknowns.size());
  for (Exponent2 e : delta_set(n + f.total_degree()).members) {
    QVector row(unknowns.size());
    for (std::size_t col = 0; col < unknowns.size(); ++col)
      row[col] = evaluate(act(WeylOp::derivation(unknowns[col]), shift(f, e)), 0, 0);
    system.append_row(row);
  }
  return unknowns.size() - rank(system);
}

} // namespace weylkit::fixtures
