#include "grassmann/sampling.hpp"

#include <algorithm>

#include "grassmann/errors.hpp"

namespace grassmann::sampling {

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

double uniform_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Rational random_rational(Rng& rng, std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
  return Rational(static_cast<long>(uniform_int(rng, lo, hi)), static_cast<long>(uniform_int(rng, 1, max_den)));
}

PlaneMatrix random_plane(Rng& rng, int k, int n) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix<Rational> rows(static_cast<std::size_t>(k), Row<Rational>(static_cast<std::size_t>(n)));
    for (auto& r : rows) {
      for (auto& x : r) x = random_rational(rng, -5, 5, 3);
    }
    if (rank(rows) == k) return PlaneMatrix(n, std::move(rows));
  }
  throw RankError("failed to draw a full-rank matrix");
}

namespace {

// Right-multiplies by I + a·E_{i,i+1} (upper) or I + a·E_{i+1,i} (lower).
void apply_elementary(Matrix<Rational>& rows, int i, bool upper, const Rational& a) {
  const auto col_from = static_cast<std::size_t>(upper ? i : i + 1);
  const auto col_to = static_cast<std::size_t>(upper ? i + 1 : i);
  for (auto& r : rows) r[col_to] += a * r[col_from];
}

void apply_random_factors(Rng& rng, Matrix<Rational>& rows, int n, int count) {
  for (int f = 0; f < count; ++f) {
    const int i = static_cast<int>(uniform_int(rng, 0, n - 2));
    apply_elementary(rows, i, uniform_int(rng, 0, 1) == 1, random_rational(rng, 1, 4, 4));
  }
  for (int c = 0; c < n; ++c) {
    const Rational d = random_rational(rng, 1, 4, 4);
    for (auto& r : rows) r[static_cast<std::size_t>(c)] *= d;
  }
}

}  // namespace

PlaneMatrix random_positive_plane(Rng& rng, int k, int n) {
  if (k < 0 || k > n) throw GradeError("random_positive_plane: need 0 <= k <= n");
  std::vector<Rational> nodes;
  Rational x = random_rational(rng, 1, 3, 2);
  for (int j = 0; j < n; ++j) {
    nodes.push_back(x);
    x += random_rational(rng, 1, 3, 2);
  }
  Matrix<Rational> rows(static_cast<std::size_t>(k), Row<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational p(1);
      for (int e = 0; e < i; ++e) p *= nodes[static_cast<std::size_t>(j)];
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
    }
  }
  if (n > 1) apply_random_factors(rng, rows, n, static_cast<int>(uniform_int(rng, 0, 2 * n)));
  return PlaneMatrix(n, std::move(rows));
}

PlaneMatrix random_boundary_plane(Rng& rng, int k, int n) {
  if (k < 1 || k >= n) throw GradeError("random_boundary_plane: need 1 <= k < n");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Matrix<Rational> rows(static_cast<std::size_t>(k), Row<Rational>(static_cast<std::size_t>(n), Rational(0)));
    if (uniform_int(rng, 0, 1) == 0) {
      // Positive plane on a column subset of size in [k, n−1], zeros elsewhere.
      const int width = static_cast<int>(uniform_int(rng, k, n - 1));
      std::vector<int> cols;
      for (int c = 0; c < n; ++c) cols.push_back(c);
      for (int c = n - 1; c > 0; --c) std::swap(cols[static_cast<std::size_t>(c)], cols[static_cast<std::size_t>(uniform_int(rng, 0, c))]);
      cols.resize(static_cast<std::size_t>(width));
      std::sort(cols.begin(), cols.end());
      const PlaneMatrix inner = random_positive_plane(rng, k, width);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < width; ++j) {
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])] = inner.row(i)[static_cast<std::size_t>(j)];
        }
      }
    } else {
      // Coordinate plane e_A pushed through a few elementary factors.
      const auto subsets = k_subsets(n, k);
      const auto& a = subsets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(subsets.size()) - 1))];
      for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(a.elements()[static_cast<std::size_t>(i)] - 1)] = Rational(1);
      apply_random_factors(rng, rows, n, static_cast<int>(uniform_int(rng, 0, n)));
    }
    PlaneMatrix plane(n, std::move(rows));
    if (classify_sign(plucker_of_matrix(plane)) == SignClass::Nonnegative) return plane;
  }
  throw ValidationError("failed to draw a boundary plane");
}

MultiVector random_positive_point(Rng& rng, int k, int n) {
  return normalize(plucker_of_matrix(random_positive_plane(rng, k, n)));
}

MultiVector random_boundary_point(Rng& rng, int k, int n) {
  return normalize(plucker_of_matrix(random_boundary_plane(rng, k, n)));
}

MultiVector random_multivector(Rng& rng, int k, int n, double density) {
  MultiVector::Coefficients c;
  for (const auto& a : k_subsets(n, k)) {
    if (uniform_real(rng) < density) c.emplace(a, random_rational(rng, -6, 6, 4));
  }
  return MultiVector(n, k, c);
}

}  // namespace grassmann::sampling
