#pragma once

// Exact linear algebra over Z[v, v^-1] (fraction-free) and Q(v).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcb/laurent.hpp"
#include "qcb/ratfunc.hpp"

namespace qcb {

using PolyVector = std::vector<LaurentPoly>;
using PolyMatrix = std::vector<PolyVector>;
using RatVector = std::vector<RatFunc>;
using RatMatrix = std::vector<RatVector>;

namespace detail {

// Nonzero entry of minimal degree span; first one on ties. -1 if the row is zero.
template <class Row, class Span>
int choose_pivot(const Row& row, Span span) {
  int best = -1;
  int best_span = 0;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c].is_zero()) continue;
    const int s = span(row[c]);
    if (best < 0 || s < best_span) {
      best = static_cast<int>(c);
      best_span = s;
    }
  }
  return best;
}

}  // namespace detail

/// Row echelon form built one row at a time with Bareiss' fraction-free
/// update, so every stored entry is a minor of the inserted rows.
class FractionFreeEchelon {
 public:
  explicit FractionFreeEchelon(std::size_t width) : width_(width) {}

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t width() const noexcept { return width_; }

  /// Adds the row if it is independent of the stored rows; returns whether it was.
  bool insert(PolyVector row) {
    reduce(row);
    const int c = detail::choose_pivot(row, [](const LaurentPoly& p) { return p.degree_span(); });
    if (c < 0) return false;
    pivots_.push_back({std::move(row), static_cast<std::size_t>(c)});
    return true;
  }

  /// Whether the row lies in the span of the stored rows.
  bool contains(PolyVector row) const {
    reduce(row);
    for (const auto& e : row)
      if (!e.is_zero()) return false;
    return true;
  }

 private:
  struct Pivot {
    PolyVector row;
    std::size_t col;
  };

  void reduce(PolyVector& row) const {
    if (row.size() != width_) throw std::invalid_argument("row width mismatch in echelon");
    LaurentPoly prev(1);
    for (const auto& [prow, col] : pivots_) {
      const LaurentPoly& p = prow[col];
      const LaurentPoly factor = row[col];
      for (std::size_t j = 0; j < width_; ++j) {
        LaurentPoly next = p * row[j];
        if (!factor.is_zero() && !prow[j].is_zero()) next -= factor * prow[j];
        row[j] = prev == LaurentPoly(1) ? std::move(next) : divide_or_throw(next, prev);
      }
      prev = p;
    }
  }

  std::size_t width_;
  std::vector<Pivot> pivots_;
};

/// Rank of a matrix over Z[v, v^-1] (equivalently over Q(v)).
inline std::size_t bareiss_rank(const PolyMatrix& m) {
  if (m.empty()) return 0;
  FractionFreeEchelon ech(m.front().size());
  for (const auto& row : m) ech.insert(row);
  return ech.rank();
}

/// Rows scaled by a common denominator so that they become Laurent rows.
inline PolyVector clear_denominators(const RatVector& row) {
  LaurentPoly l(1);
  for (const auto& x : row) {
    if (x.is_zero() || x.is_laurent()) continue;
    LaurentPoly g = gcd(l, x.den());
    l = divide_or_throw(l * x.den(), g);
  }
  PolyVector out;
  out.reserve(row.size());
  for (const auto& x : row) out.push_back((RatFunc(l) * x).as_laurent());
  return out;
}

/// Rank over Q(v) via fraction-free elimination on the cleared matrix.
inline std::size_t rf_rank(const RatMatrix& a) {
  PolyMatrix m;
  m.reserve(a.size());
  for (const auto& row : a) m.push_back(clear_denominators(row));
  return bareiss_rank(m);
}

/// One solution of a x = b over Q(v) (free variables set to zero), or
/// nullopt when the system is inconsistent.
inline std::optional<RatVector> rf_solve(RatMatrix a, RatVector b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("rf_solve: dimension mismatch");
  const std::size_t cols = rows ? a.front().size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  auto span = [](const RatFunc& x) { return x.num().degree_span() + x.den().degree_span(); };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      if (best == rows || span(a[i][c]) < span(a[best][c])) best = i;
    }
    if (best == rows) continue;
    std::swap(a[r], a[best]);
    std::swap(b[r], b[best]);
    const RatFunc inv = RatFunc(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const RatFunc f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  RatVector x(cols);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = b[k];
  return x;
}

inline RatMatrix to_rat(const PolyMatrix& m) {
  RatMatrix r;
  r.reserve(m.size());
  for (const auto& row : m) r.emplace_back(row.begin(), row.end());
  return r;
}

/// Inverse of a square matrix over Q(v); throws if singular.
inline RatMatrix rf_inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix inv(n, RatVector(n));
  for (std::size_t k = 0; k < n; ++k) {
    RatVector e(n);
    e[k] = RatFunc(1);
    auto x = rf_solve(a, e);
    if (!x) throw ArithmeticError("rf_inverse: singular matrix");
    for (std::size_t i = 0; i < n; ++i) inv[i][k] = (*x)[i];
  }
  return inv;
}

inline RatVector mat_vec(const RatMatrix& a, const RatVector& x) {
  RatVector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] += a[i][j] * x[j];
  return y;
}

}  // namespace qcb
