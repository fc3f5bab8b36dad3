#pragma once

// Convex polytopes in H-representation over Rational or double. Dimensions
// here are small (fiber polytopes of dimension at most four), so vertex
// enumeration and hulls are exhaustive over constraint or point subsets.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "grassmann/errors.hpp"
#include "grassmann/linalg.hpp"

namespace grassmann {

/// normal · y ≤ offset
template <class T>
struct Halfspace {
  Row<T> normal;
  T offset;
};

template <class T>
struct HPolytope {
  int dim = 0;
  std::vector<Halfspace<T>> constraints;

  void validate() const {
    for (const auto& h : constraints) {
      if (static_cast<int>(h.normal.size()) != dim) throw DimensionError("halfspace normal has the wrong length");
      bool zero = true;
      for (const auto& x : h.normal) zero = zero && ScalarTraits<T>::is_zero(x, 0.0);
      if (zero) throw ValidationError("halfspace normal is zero");
    }
  }
};

namespace detail {

/// Calls fn on every r-subset of {0, …, n−1} in lexicographic order.
inline void for_each_subset(int n, int r, const std::function<void(const std::vector<int>&)>& fn) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

template <class T>
T dot(const Row<T>& a, const Row<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

template <class T>
double norm(const Row<T>& a) {
  double s = 0.0;
  for (const auto& x : a) {
    const double d = ScalarTraits<T>::to_double(x);
    s += d * d;
  }
  return std::sqrt(s);
}

// a ≤ b, with slack scaled to the magnitudes involved for doubles.
template <class T>
bool leq(const T& a, const T& b, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return a <= b;
  } else {
    return a <= b + tol * (1.0 + std::abs(b));
  }
}

template <class T>
bool near(const T& a, const T& b, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol * (1.0 + std::abs(b));
  }
}

template <class T>
bool same_point(const Row<T>& a, const Row<T>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!near(a[i], b[i], tol)) return false;
  }
  return true;
}

}  // namespace detail

template <class T>
bool satisfies(const HPolytope<T>& p, const Row<T>& y, double tol = 1e-9) {
  for (const auto& h : p.constraints) {
    if (!detail::leq(detail::dot(h.normal, y), h.offset, tol)) return false;
  }
  return true;
}

/// Affine dimension of a finite point set (−1 for the empty set).
template <class T>
int affine_dimension(const std::vector<Row<T>>& points, double tol = 1e-9) {
  if (points.empty()) return -1;
  Matrix<T> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Row<T> d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return diffs.empty() ? 0 : rank(diffs, tol);
}

/// Throws UnboundedError if the recession cone {A y ≤ 0} is nontrivial.
template <class T>
void require_bounded(const HPolytope<T>& p, double tol = 1e-9) {
  const int m = p.dim;
  const int count = static_cast<int>(p.constraints.size());
  Matrix<T> normals;
  for (const auto& h : p.constraints) normals.push_back(h.normal);
  if (m > 0 && (normals.empty() || rank(normals, tol) < m)) throw UnboundedError("polytope contains a line");
  detail::for_each_subset(count, m - 1, [&](const std::vector<int>& subset) {
    Matrix<T> a;
    for (int i : subset) a.push_back(p.constraints[static_cast<std::size_t>(i)].normal);
    Matrix<T> ns = a.empty() ? Matrix<T>{} : null_space(a, static_cast<std::size_t>(m), tol);
    if (a.empty()) {
      Row<T> d(static_cast<std::size_t>(m), T(0));
      d[0] = T(1);
      ns.push_back(d);
    }
    if (ns.size() != 1) return;
    for (int sign : {1, -1}) {
      bool ray = true;
      for (const auto& h : p.constraints) {
        T v = detail::dot(h.normal, ns[0]);
        if (sign < 0) v = T(0) - v;
        if (!detail::leq(v, T(0), tol)) {
          ray = false;
          break;
        }
      }
      if (ray) throw UnboundedError("polytope has a recession direction");
    }
  });
}

/// Vertex set by intersecting every m-subset of constraints. Empty when the
/// polytope is empty. Throws UnboundedError for unbounded input.
template <class T>
std::vector<Row<T>> vertices(const HPolytope<T>& p, double tol = 1e-9) {
  p.validate();
  const int m = p.dim;
  std::vector<Row<T>> out;
  if (m == 0) {
    for (const auto& h : p.constraints) {
      if (!detail::leq(T(0), h.offset, tol)) return out;
    }
    out.emplace_back();
    return out;
  }
  require_bounded(p, tol);
  detail::for_each_subset(static_cast<int>(p.constraints.size()), m, [&](const std::vector<int>& subset) {
    Matrix<T> a;
    Row<T> b;
    for (int i : subset) {
      a.push_back(p.constraints[static_cast<std::size_t>(i)].normal);
      b.push_back(p.constraints[static_cast<std::size_t>(i)].offset);
    }
    const auto x = solve(a, b, tol);
    if (!x || !satisfies(p, *x, tol)) return;
    for (const auto& v : out) {
      if (detail::same_point(v, *x, tol)) return;
    }
    out.push_back(*x);
  });
  return out;
}

namespace detail {

// Pulling triangulation of the face spanned by `ids`, of affine dimension
// `face_dim`: cone from the first vertex over the facets missing it.
template <class T>
void triangulate(const HPolytope<T>& p, const std::vector<Row<T>>& verts, const std::vector<int>& ids, int face_dim,
                 std::vector<std::vector<int>>& out, double tol) {
  if (face_dim == 0) {
    out.push_back({ids[0]});
    return;
  }
  const int apex = ids[0];
  std::vector<std::vector<int>> seen;
  for (const auto& h : p.constraints) {
    std::vector<int> sub;
    for (int i : ids) {
      if (near(dot(h.normal, verts[static_cast<std::size_t>(i)]), h.offset, tol)) sub.push_back(i);
    }
    if (sub.empty() || sub[0] == apex) continue;  // ids are sorted, so apex would be first
    std::vector<Row<T>> pts;
    for (int i : sub) pts.push_back(verts[static_cast<std::size_t>(i)]);
    if (affine_dimension(pts, tol) != face_dim - 1) continue;
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == sub;
    if (dup) continue;
    seen.push_back(sub);
    std::vector<std::vector<int>> facet_simplices;
    triangulate(p, verts, sub, face_dim - 1, facet_simplices, tol);
    for (auto& s : facet_simplices) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

// Volume-weighted centroid of the vertex hull within its affine span.
template <class T>
Row<T> centroid(const HPolytope<T>& p, const std::vector<Row<T>>& verts, int d, double tol) {
  const std::size_t m = static_cast<std::size_t>(p.dim);
  if (d == 0) return verts[0];
  // Coordinates in which the affine span projects injectively.
  Matrix<T> diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    Row<T> r(m);
    for (std::size_t j = 0; j < m; ++j) r[j] = verts[i][j] - verts[0][j];
    diffs.push_back(std::move(r));
  }
  Matrix<T> cols(m, Row<T>(diffs.size()));
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) cols[j][i] = diffs[i][j];
  }
  // pivots of the transposed system are the independent coordinate rows
  std::vector<int> coords;
  {
    Matrix<T> t = cols;
    Matrix<T> picked;
    for (std::size_t j = 0; j < m && static_cast<int>(coords.size()) < d; ++j) {
      picked.push_back(t[j]);
      if (rank(picked, tol) == static_cast<int>(picked.size())) {
        coords.push_back(static_cast<int>(j));
      } else {
        picked.pop_back();
      }
    }
  }
  std::vector<int> ids(verts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  std::vector<std::vector<int>> simplices;
  triangulate(p, verts, ids, d, simplices, tol);
  Row<T> acc(m, T(0));
  T total(0);
  for (const auto& s : simplices) {
    Matrix<T> e(static_cast<std::size_t>(d), Row<T>(static_cast<std::size_t>(d)));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const auto col = static_cast<std::size_t>(coords[static_cast<std::size_t>(c)]);
        e[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            verts[static_cast<std::size_t>(s[static_cast<std::size_t>(r + 1)])][col] -
            verts[static_cast<std::size_t>(s[0])][col];
      }
    }
    T w = determinant(e);
    if (w < T(0)) w = T(0) - w;
    Row<T> c(m, T(0));
    for (int i : s) {
      for (std::size_t j = 0; j < m; ++j) c[j] = c[j] + verts[static_cast<std::size_t>(i)][j];
    }
    for (std::size_t j = 0; j < m; ++j) acc[j] = acc[j] + w * c[j] / T(d + 1);
    total = total + w;
  }
  if (ScalarTraits<T>::is_zero(total, 0.0)) throw DegenerateError("triangulation has zero volume");
  for (auto& x : acc) x = x / total;
  return acc;
}

}  // namespace detail

/// Volume-weighted centroid. Throws DegenerateError for lower-dimensional
/// or empty polytopes.
template <class T>
Row<T> barycenter(const HPolytope<T>& p, double tol = 1e-9) {
  const auto verts = vertices(p, tol);
  if (verts.empty()) throw DegenerateError("barycenter of an empty polytope");
  const int d = affine_dimension(verts, tol);
  if (d < p.dim) throw DegenerateError("barycenter of a lower-dimensional polytope");
  return detail::centroid(p, verts, d, tol);
}

/// Centroid with respect to volume inside the affine hull; agrees with
/// barycenter for full-dimensional input and is the point itself for a point.
template <class T>
Row<T> relative_barycenter(const HPolytope<T>& p, double tol = 1e-9) {
  const auto verts = vertices(p, tol);
  if (verts.empty()) throw DegenerateError("barycenter of an empty polytope");
  return detail::centroid(p, verts, affine_dimension(verts, tol), tol);
}

/// {y + shift : y ∈ P}
template <class T>
HPolytope<T> translate(const HPolytope<T>& p, const Row<T>& shift) {
  HPolytope<T> out = p;
  for (auto& h : out.constraints) h.offset = h.offset + detail::dot(h.normal, shift);
  return out;
}

/// {λ y : y ∈ P} for λ ≥ 0.
template <class T>
HPolytope<T> scale(const HPolytope<T>& p, const T& lambda) {
  HPolytope<T> out = p;
  for (auto& h : out.constraints) h.offset = h.offset * lambda;
  return out;
}

/// max over points of n · x
inline double support(const std::vector<Row<double>>& points, const Row<double>& n) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : points) best = std::max(best, detail::dot(n, x));
  return best;
}

/// sup{t ≥ 0 : t·u ∈ P} for P containing 0.
inline double radial_function(const HPolytope<double>& p, const Row<double>& u, double tol = 1e-12) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : p.constraints) {
    const double a = detail::dot(h.normal, u);
    if (a > tol * detail::norm(h.normal)) best = std::min(best, std::max(h.offset, 0.0) / a);
  }
  if (!std::isfinite(best)) throw UnboundedError("radial function is infinite in this direction");
  return best;
}

/// Facet description (unit outward normals) of the convex hull of a
/// full-dimensional point set. Throws DegenerateError otherwise.
HPolytope<double> hull(const std::vector<Row<double>>& points, double tol = 1e-9);

/// {a·x + b·y : x ∈ X, y ∈ Y} for finite point sets.
std::vector<Row<double>> minkowski_points(const std::vector<Row<double>>& xs, double a,
                                          const std::vector<Row<double>>& ys, double b);

/// Lower bound for the Chebyshev radius: the distance from the relative
/// barycenter to the nearest constraint hyperplane (0 for degenerate input).
double interior_radius(const HPolytope<double>& p, double tol = 1e-9);

HPolytope<double> to_double(const HPolytope<Rational>& p);

}  // namespace grassmann
