#include "grassmann/polytope.hpp"

#include <algorithm>

namespace grassmann {

namespace {

std::vector<Row<double>> dedupe(const std::vector<Row<double>>& points, double tol) {
  std::vector<Row<double>> out;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : out) dup = dup || detail::same_point(p, q, tol);
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace

HPolytope<double> hull(const std::vector<Row<double>>& raw, double tol) {
  if (raw.empty()) throw DegenerateError("hull of an empty set");
  const auto points = dedupe(raw, tol);
  const int m = static_cast<int>(points[0].size());
  HPolytope<double> out;
  out.dim = m;
  if (m == 0) return out;
  if (affine_dimension(points, tol) < m) throw DegenerateError("hull of a lower-dimensional point set");

  auto add = [&](Row<double> n) {
    const double len = detail::norm(n);
    for (auto& x : n) x /= len;
    const double offset = support(points, n);
    for (const auto& h : out.constraints) {
      if (detail::same_point(h.normal, n, 1e-9)) return;
    }
    out.constraints.push_back({std::move(n), offset});
  };

  if (m == 1) {
    add({1.0});
    add({-1.0});
    return out;
  }
  detail::for_each_subset(static_cast<int>(points.size()), m, [&](const std::vector<int>& subset) {
    const auto& base = points[static_cast<std::size_t>(subset[0])];
    Matrix<double> diffs;
    for (std::size_t i = 1; i < subset.size(); ++i) {
      Row<double> d(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) {
        d[static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(subset[i])][static_cast<std::size_t>(j)] -
                                          base[static_cast<std::size_t>(j)];
      }
      diffs.push_back(std::move(d));
    }
    const auto ns = null_space(diffs, static_cast<std::size_t>(m), tol);
    if (ns.size() != 1) return;
    Row<double> n = ns[0];
    const double len = detail::norm(n);
    for (auto& x : n) x /= len;
    const double level = detail::dot(n, base);
    bool below = true;
    bool above = true;
    for (const auto& p : points) {
      const double v = detail::dot(n, p) - level;
      below = below && v <= tol;
      above = above && v >= -tol;
    }
    if (above && !below) {
      for (auto& x : n) x = -x;
    }
    if (above || below) add(std::move(n));
  });
  return out;
}

std::vector<Row<double>> minkowski_points(const std::vector<Row<double>>& xs, double a,
                                          const std::vector<Row<double>>& ys, double b) {
  std::vector<Row<double>> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      Row<double> s(x.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = a * x[i] + b * y[i];
      out.push_back(std::move(s));
    }
  }
  return out;
}

double interior_radius(const HPolytope<double>& p, double tol) {
  const auto verts = vertices(p, tol);
  if (verts.empty() || affine_dimension(verts, tol) < p.dim) return 0.0;
  const auto c = detail::centroid(p, verts, p.dim, tol);
  double r = std::numeric_limits<double>::infinity();
  for (const auto& h : p.constraints) r = std::min(r, (h.offset - detail::dot(h.normal, c)) / detail::norm(h.normal));
  return std::max(r, 0.0);
}

HPolytope<double> to_double(const HPolytope<Rational>& p) {
  HPolytope<double> out;
  out.dim = p.dim;
  for (const auto& h : p.constraints) {
    Row<double> n;
    for (const auto& x : h.normal) n.push_back(x.to_double());
    out.constraints.push_back({std::move(n), h.offset.to_double()});
  }
  return out;
}

}  // namespace grassmann
