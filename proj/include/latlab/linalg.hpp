#pragma once

// Exact integer and rational linear algebra: Bareiss determinants, Smith and
// Hermite normal forms, saturated integer kernels and rational solves.

#include "latlab/errors.hpp"
#include "latlab/integer.hpp"
#include "latlab/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace latlab {

// Fraction-free (Bareiss) determinant.
inline Integer det_exact(const IntMatrix& a) {
  if (!a.is_square()) throw dimension_error("det_exact: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// U·A·V = D with U, V unimodular and D diagonal, d1 | d2 | ..., zeros trailing.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  // Diagonal of D (length min(rows, cols)).
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& x : diagonal())
      if (x != 0) ++r;
    return r;
  }
};

namespace detail {

// Position of the smallest nonzero |entry| in the block [t.., t..]; false if all zero.
inline bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer v = abs(d(i, j));
      if (!found || v < best) {
        best = v;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

inline SnfDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfDecomposition r{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& U = r.U;
  IntMatrix& D = r.D;
  IntMatrix& V = r.V;

  const auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    D.swap_rows(t, i);
    U.swap_rows(t, i);
    D.swap_cols(t, j);
    V.swap_cols(t, j);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!detail::find_min_pivot(D, t, pi, pj)) break;
    move_to_pivot(t, pi, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const Integer q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const Integer q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        Integer best = abs(D(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
        move_to_pivot(t, bi, bj);
        continue;
      }
      // Row and column clear: enforce divisibility of the trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      D.add_row(t, *bad_row, 1);
      U.add_row(t, *bad_row, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return r;
}

// Row-style Hermite normal form with the unimodular transform W: W·A = [H; 0].
// H is in row echelon form with positive pivots and entries above each pivot
// reduced into [0, pivot).
struct HnfDecomposition {
  IntMatrix H;  // nonzero rows only
  IntMatrix W;  // rows(A) x rows(A), unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

inline HnfDecomposition hnf_with_transform(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix A = a;
  IntMatrix W = IntMatrix::identity(m);
  std::vector<std::size_t> pivots;
  std::size_t p = 0;
  for (std::size_t j = 0; j < n && p < m; ++j) {
    for (;;) {
      // smallest nonzero entry in column j among rows p..m-1
      std::optional<std::size_t> best;
      for (std::size_t i = p; i < m; ++i)
        if (A(i, j) != 0 && (!best || abs(A(i, j)) < abs(A(*best, j)))) best = i;
      if (!best) break;
      A.swap_rows(p, *best);
      W.swap_rows(p, *best);
      bool clean = true;
      for (std::size_t i = p + 1; i < m; ++i) {
        if (A(i, j) == 0) continue;
        const Integer q = A(i, j) / A(p, j);
        A.add_row(i, p, -q);
        W.add_row(i, p, -q);
        if (A(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (A(p, j) == 0) continue;
    if (A(p, j) < 0) {
      A.negate_row(p);
      W.negate_row(p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      const Integer q = floor_div(A(i, j), A(p, j));
      A.add_row(i, p, -q);
      W.add_row(i, p, -q);
    }
    pivots.push_back(j);
    ++p;
  }
  return {A.row_range(0, p), W, p, pivots};
}

inline IntMatrix hnf(const IntMatrix& a) { return hnf_with_transform(a).H; }

inline std::size_t rank(const IntMatrix& a) { return hnf_with_transform(a).rank; }

// Rows form a saturated basis (in Hermite form) of {x : x·A = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  const auto h = hnf_with_transform(a);
  const IntMatrix k = h.W.row_range(h.rank, a.rows());
  if (k.rows() == 0) return IntMatrix(0, a.rows());
  return hnf(k);
}

// Exact solution of A·x = b for square nonsingular A.
inline RatVector solve_exact(const RatMatrix& a, const RatVector& b) {
  if (!a.is_square()) throw dimension_error("solve_exact: matrix is not square");
  if (a.rows() != b.size()) throw dimension_error("solve_exact: right-hand side has wrong length");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatVector x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw singular_error("solve_exact: matrix is singular");
    m.swap_rows(k, p);
    std::swap(x[k], x[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      m.add_row(i, k, -f);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Rational s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m(k, j) * x[j];
    x[k] = s / m(k, k);
  }
  return x;
}

inline RatVector solve_exact(const IntMatrix& a, const RatVector& b) { return solve_exact(to_rational(a), b); }

inline RatMatrix inverse_exact(const RatMatrix& a) {
  if (!a.is_square()) throw dimension_error("inverse_exact: matrix is not square");
  const std::size_t n = a.rows();
  RatMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n, Rational(0));
    e[j] = 1;
    const RatVector c = solve_exact(a, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = c[i];
  }
  return inv;
}

inline RatMatrix inverse_exact(const IntMatrix& a) { return inverse_exact(to_rational(a)); }

// Inverse of a unimodular integer matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& a) {
  auto inv = to_integer(inverse_exact(a));
  if (!inv) throw domain_error("inverse_unimodular: matrix is not unimodular");
  return *inv;
}

// Unimodular matrix whose first row is the primitive vector c.
inline IntMatrix complete_to_basis(const IntVector& c) {
  if (gcd(c) != 1) throw primitivity_error("complete_to_basis: vector is not primitive");
  IntMatrix row(1, c.size());
  for (std::size_t j = 0; j < c.size(); ++j) row(0, j) = c[j];
  const auto s = snf(row);
  // c = U^-1 · e1 · V^-1 with U = ±1.
  IntMatrix w = inverse_unimodular(s.V);
  if (s.U(0, 0) < 0) w.negate_row(0);
  return w;
}

// Coordinates C with C·outer = inner, if they exist over ℤ. outer needs
// independent rows.
inline std::optional<IntMatrix> integer_coordinates(const IntMatrix& inner, const IntMatrix& outer) {
  if (inner.cols() != outer.cols()) throw dimension_error("integer_coordinates: column counts differ");
  const RatMatrix o = to_rational(outer);
  const RatMatrix gram = o * o.transpose();
  const RatMatrix inv = inverse_exact(gram);
  const RatMatrix c = to_rational(inner) * o.transpose() * inv;
  if (c * o != to_rational(inner)) return std::nullopt;
  return to_integer(c);
}

}  // namespace latlab
