#include "grassmann/numeric.hpp"

#include <cmath>

#include "grassmann/errors.hpp"

namespace grassmann {

double DenseForm::sum() const {
  double s = 0.0;
  for (double x : c) s += x;
  return s;
}

double DenseForm::max_abs() const {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t subset_rank(int n, const std::vector<int>& elements) {
  const int k = static_cast<int>(elements.size());
  std::size_t r = 0;
  int prev = 0;
  for (int i = 1; i <= k; ++i) {
    const int a = elements[static_cast<std::size_t>(i - 1)];
    for (int j = prev + 1; j < a; ++j) r += binomial(n - j, k - i);
    prev = a;
  }
  return r;
}

DenseForm to_dense(const MultiVector& omega) { return {omega.n(), omega.grade(), omega.dense_double()}; }

DenseForm zero_form(int n, int k) { return {n, k, std::vector<double>(binomial(n, k), 0.0)}; }

DenseForm wedge(const Row<double>& v, const DenseForm& omega) {
  if (static_cast<int>(v.size()) != omega.n) throw DimensionError("vector and form live in different spaces");
  if (omega.k >= omega.n) return zero_form(omega.n, omega.k + 1);
  DenseForm out = zero_form(omega.n, omega.k + 1);
  const auto subsets = k_subsets(omega.n, omega.k);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (omega.c[i] == 0.0) continue;
    const auto& a = subsets[i].elements();
    for (int j = 1; j <= omega.n; ++j) {
      const double vj = v[static_cast<std::size_t>(j - 1)];
      if (vj == 0.0 || subsets[i].contains(j)) continue;
      int before = 0;
      for (int x : a) before += x < j ? 1 : 0;
      const std::vector<int> merged = subsets[i].with(j).elements();
      out.c[subset_rank(omega.n, merged)] += (before % 2 == 0 ? 1.0 : -1.0) * vj * omega.c[i];
    }
  }
  return out;
}

DenseForm contract(const DenseForm& omega, const Row<double>& v) {
  if (static_cast<int>(v.size()) != omega.n) throw DimensionError("vector and form live in different spaces");
  if (omega.k == 0) throw GradeError("cannot contract a scalar");
  DenseForm out = zero_form(omega.n, omega.k - 1);
  const auto subsets = k_subsets(omega.n, omega.k);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (omega.c[i] == 0.0) continue;
    const auto& a = subsets[i].elements();
    for (std::size_t pos = 0; pos < a.size(); ++pos) {
      const double vj = v[static_cast<std::size_t>(a[pos] - 1)];
      if (vj == 0.0) continue;
      const std::vector<int> rest = subsets[i].without(a[pos]).elements();
      out.c[subset_rank(omega.n, rest)] += (pos % 2 == 0 ? 1.0 : -1.0) * vj * omega.c[i];
    }
  }
  return out;
}

Matrix<double> plane_projector(const DenseForm& omega) {
  const auto n = static_cast<std::size_t>(omega.n);
  Matrix<double> p(n, Row<double>(n, 0.0));
  double norm2 = 0.0;
  for (double x : omega.c) norm2 += x * x;
  if (norm2 == 0.0) throw DomainError("projector of the zero form");
  if (omega.k == 0) return p;
  for (const auto& b : k_subsets(omega.n, omega.k - 1)) {
    DenseForm w = omega;
    for (int j : b.elements()) {
      Row<double> e(n, 0.0);
      e[static_cast<std::size_t>(j - 1)] = 1.0;
      w = contract(w, e);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p[i][j] += w.c[i] * w.c[j] / norm2;
    }
  }
  return p;
}

Matrix<double> orthonormal_range(const Matrix<double>& projector, int rank, double accept) {
  const std::size_t n = projector.size();
  Matrix<double> basis;
  auto residual = [&](std::size_t col) {
    Row<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = projector[i][col];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += u[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * u[i];
      }
    }
    return v;
  };
  auto length = [](const Row<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  auto push = [&](Row<double> v) {
    const double len = length(v);
    for (auto& x : v) x /= len;
    basis.push_back(std::move(v));
  };
  for (std::size_t col = 0; col < n && static_cast<int>(basis.size()) < rank; ++col) {
    Row<double> v = residual(col);
    if (length(v) > accept) push(std::move(v));
  }
  while (static_cast<int>(basis.size()) < rank) {
    // fall back to the column with the largest residual
    Row<double> best;
    double best_len = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
      Row<double> v = residual(col);
      const double len = length(v);
      if (len > best_len) {
        best_len = len;
        best = std::move(v);
      }
    }
    if (best_len <= 1e-12) throw RankError("projector has smaller rank than expected");
    push(std::move(best));
  }
  return basis;
}

Matrix<double> hyperplane_basis(const Row<double>& g) {
  const std::size_t r = g.size();
  double len = 0.0;
  for (double x : g) len += x * x;
  len = std::sqrt(len);
  if (len == 0.0) throw DomainError("hyperplane of the zero vector");
  Row<double> b(r);
  for (std::size_t i = 0; i < r; ++i) b[i] = g[i] / len;
  Matrix<double> out;
  if (r == 1) return out;
  if (r == 2) return {{b[1], -b[0]}};
  const double c = b[r - 1];
  if (1.0 + c < 1e-12) {
    // g points along −e_r: rotate by π in the (e_1, e_r) plane
    for (std::size_t j = 0; j + 1 < r; ++j) {
      Row<double> v(r, 0.0);
      v[j] = j == 0 ? -1.0 : 1.0;
      out.push_back(std::move(v));
    }
    return out;
  }
  // R = I + K + K²/(1+c) with K = b e_rᵀ − e_r bᵀ; row j of the result is R e_j.
  for (std::size_t j = 0; j + 1 < r; ++j) {
    Row<double> v(r, 0.0);
    v[j] = 1.0;
    // K e_j = −b_j e_r and K² e_j = −b_j (b − c e_r)
    const double bj = b[j];
    v[r - 1] -= bj;
    for (std::size_t i = 0; i < r; ++i) v[i] -= bj * b[i] / (1.0 + c);
    v[r - 1] += bj * c / (1.0 + c);
    out.push_back(std::move(v));
  }
  return out;
}

Row<double> least_squares(const Matrix<double>& a, const Row<double>& b) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Matrix<double> normal(cols, Row<double>(cols, 0.0));
  Row<double> rhs(cols, 0.0);
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < cols; ++i) {
      rhs[i] += a[r][i] * b[r];
      for (std::size_t j = 0; j < cols; ++j) normal[i][j] += a[r][i] * a[r][j];
    }
  }
  const auto x = solve(normal, rhs, 1e-14);
  if (!x) throw RankError("least-squares system is singular");
  return *x;
}

}  // namespace grassmann
