#pragma once

// Small dense linear algebra shared by the exact (Rational) and floating
// (double) code paths. Sizes here are tiny (at most a dozen rows), so
// everything is plain Gaussian elimination.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "grassmann/rational.hpp"

namespace grassmann {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/) { return x.is_zero(); }
  static Rational magnitude(const Rational& x) { return abs(x); }
  static double to_double(const Rational& x) { return x.to_double(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(double x) { return std::abs(x); }
  static double to_double(double x) { return x; }
};

template <class T>
using Row = std::vector<T>;

template <class T>
using Matrix = std::vector<Row<T>>;

template <class T>
struct EchelonForm {
  Matrix<T> rows;             // nonzero rows of the reduced row echelon form
  std::vector<int> pivots;    // pivot column of each row
};

/// Reduced row echelon form. For doubles, partial pivoting with `tol` as the
/// zero threshold; for rationals the reduction is exact and `tol` is ignored.
template <class T>
EchelonForm<T> rref(Matrix<T> a, double tol = 1e-12) {
  using Tr = ScalarTraits<T>;
  EchelonForm<T> out;
  const std::size_t rows = a.size();
  if (rows == 0) return out;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    if constexpr (Tr::exact) {
      while (best < rows && a[best][c].is_zero()) ++best;
      if (best == rows) continue;
    } else {
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
      }
      if (Tr::is_zero(a[best][c], tol)) continue;
    }
    std::swap(a[r], a[best]);
    const T pivot = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] / pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const T factor = a[i][c];
      if (Tr::is_zero(factor, 0.0)) continue;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - factor * a[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

template <class T>
int rank(const Matrix<T>& a, double tol = 1e-12) {
  return static_cast<int>(rref(a, tol).rows.size());
}

/// Determinant of a square matrix by elimination.
template <class T>
T determinant(Matrix<T> a, double tol = 0.0) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = a.size();
  T det = T(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    if constexpr (Tr::exact) {
      while (best < n && a[best][c].is_zero()) ++best;
      if (best == n) return T(0);
    } else {
      for (std::size_t i = c + 1; i < n; ++i) {
        if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
      }
      if (Tr::is_zero(a[best][c], tol)) return T(0);
    }
    if (best != c) {
      std::swap(a[best], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const T factor = a[i][c] / a[c][c];
      if (Tr::is_zero(factor, 0.0)) continue;
      for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - factor * a[c][j];
    }
  }
  return det;
}

/// Solves the square system a·x = b; nullopt when a is singular.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b, double tol = 1e-12) {
  const std::size_t n = a.size();
  Matrix<T> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto ef = rref(std::move(aug), tol);
  if (ef.rows.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    if (ef.pivots[i] != static_cast<int>(i)) return std::nullopt;
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ef.rows[i][n];
  return x;
}

/// Basis of the null space {x : a·x = 0}, one vector per free column.
template <class T>
Matrix<T> null_space(const Matrix<T>& a, std::size_t cols, double tol = 1e-12) {
  const auto ef = rref(a, tol);
  std::vector<bool> is_pivot(cols, false);
  for (int p : ef.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<T> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Row<T> v(cols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < ef.rows.size(); ++r) {
      v[static_cast<std::size_t>(ef.pivots[r])] = -ef.rows[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace grassmann
