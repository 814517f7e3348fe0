#pragma once

// Exact integer linear algebra: fraction-free ranks, Smith invariants, rational solves.
// Matrices are tiny at the sizes used here, so everything is dense.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "chernbord/coeff.hpp"

namespace chernbord::linalg {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Horizontal concatenation [A | B].
  static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ && a.cols_ != 0 && b.cols_ != 0)
      throw DimensionError("hconcat: row counts differ");
    std::size_t rows = a.cols_ == 0 ? b.rows_ : a.rows_;
    IntMatrix out(rows, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Rank over Q by Bareiss fraction-free elimination.
inline std::size_t rank(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(p, k), m(r, k));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k)
        m(i, k) = (m(r, c) * m(i, k) - m(i, c) * m(r, k)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

/// Nonzero Smith invariant factors d_1 | d_2 | ... (all positive); their count is the rank.
inline std::vector<Integer> smith_invariants(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (!piv || abs(m(i, j)) < abs(m(piv->first, piv->second)))) piv = {i, j};
    if (!piv) break;
    for (std::size_t k = 0; k < cols; ++k) std::swap(m(t, k), m(piv->first, k));
    for (std::size_t k = 0; k < rows; ++k) std::swap(m(k, t), m(k, piv->second));

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Integer q = m(i, t) / m(t, t);
        for (std::size_t k = t; k < cols; ++k) m(i, k) -= q * m(t, k);
        if (m(i, t) != 0) {
          for (std::size_t k = 0; k < cols; ++k) std::swap(m(t, k), m(i, k));
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Integer q = m(t, j) / m(t, t);
        for (std::size_t k = t; k < rows; ++k) m(k, j) -= q * m(k, t);
        if (m(t, j) != 0) {
          for (std::size_t k = 0; k < rows; ++k) std::swap(m(k, t), m(k, j));
          clean = false;
        }
      }
      if (clean) {
        // Enforce divisibility of the remaining block by the pivot.
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols && clean; ++j)
            if (m(i, j) % m(t, t) != 0) {
              for (std::size_t k = t; k < cols; ++k) m(t, k) += m(i, k);
              clean = false;
            }
      }
    }
    diag.push_back(abs(m(t, t)));
    ++t;
  }
  return diag;
}

/// True when the column span is a direct summand of Z^rows (all invariant factors are 1).
inline bool is_saturated(const IntMatrix& m) {
  for (const auto& d : smith_invariants(m))
    if (d != 1) return false;
  return true;
}

/// Solves m * x = b over Q when m has full column rank; nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve(const IntMatrix& m, const std::vector<Integer>& b) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (b.size() != rows) throw DimensionError("solve: right-hand side has the wrong length");
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rational(m(i, j));
    a[i][cols] = Rational(b[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k <= cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;
  if (r < cols) throw DefectError("solve: matrix does not have full column rank");
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][cols] / a[i][pivot_col[i]];
  return x;
}

}  // namespace chernbord::linalg
