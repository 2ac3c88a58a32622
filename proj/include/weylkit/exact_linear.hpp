#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "weylkit/rational.hpp"

namespace weylkit {

using QVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
      m(k, k) = 1;
    return m;
  }

  /// All rows must share the length `cols`.
  static QMatrix from_rows(const std::vector<QVector> &rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw Error(ErrorKind::InputError, "ragged matrix rows");
      std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational &operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return entries_[r * cols_ + c];
  }
  const Rational &operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return entries_[r * cols_ + c];
  }

  std::span<Rational> row(std::size_t r) {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }

  void append_row(std::span<const Rational> values) {
    if (values.size() != cols_)
      throw Error(ErrorKind::InputError, "row length mismatch");
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
  }

  QVector apply(std::span<const Rational> v) const {
    if (v.size() != cols_)
      throw Error(ErrorKind::InputError, "vector length mismatch");
    QVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (sgn(v[c]) != 0 && sgn((*this)(r, c)) != 0)
          out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend QMatrix operator*(const QMatrix &a, const QMatrix &b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorKind::InputError, "matrix dimension mismatch");
    QMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(r, k)) == 0)
          continue;
        for (std::size_t c = 0; c < b.cols_; ++c)
          out(r, c) += a(r, k) * b(k, c);
      }
    return out;
  }

  friend bool operator==(const QMatrix &a, const QMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. The pivot in each column is the first row (at
/// or below the current one) with a nonzero entry; exact arithmetic needs no
/// magnitude-based pivoting. Work per pivot is proportional to the nonzero
/// entries of the pivot row, which keeps the sparse constraint systems cheap.
inline RowEchelon rref(QMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  std::vector<std::size_t> support;
  for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
    std::size_t r = prow;
    while (r < m.rows() && sgn(m(r, col)) == 0)
      ++r;
    if (r == m.rows())
      continue;
    if (r != prow)
      for (std::size_t c = col; c < m.cols(); ++c)
        std::swap(m(r, c), m(prow, c));

    support.clear();
    for (std::size_t c = col; c < m.cols(); ++c)
      if (sgn(m(prow, c)) != 0)
        support.push_back(c);
    const Rational inv = 1 / m(prow, col);
    for (auto c : support)
      m(prow, c) *= inv;

    for (std::size_t other = 0; other < m.rows(); ++other) {
      if (other == prow || sgn(m(other, col)) == 0)
        continue;
      const Rational factor = m(other, col);
      for (auto c : support)
        m(other, c) -= factor * m(prow, c);
    }
    pivots.push_back(col);
    ++prow;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const QMatrix &m) { return rref(m).pivots.size(); }

/// Basis of the right kernel {v : m v = 0}, one vector per free column, with
/// that free variable set to 1. Ordered by free column index.
inline std::vector<QVector> nullspace_basis(const QMatrix &m) {
  auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots)
    is_pivot[p] = true;

  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free])
      continue;
    QVector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = -reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rank of a list of equal-length vectors viewed as matrix rows.
inline std::size_t rank_of(const std::vector<QVector> &vectors, std::size_t len) {
  if (vectors.empty())
    return 0;
  return rank(QMatrix::from_rows(vectors, len));
}

} // namespace weylkit
