#include "grassmann/chamber.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grassmann/errors.hpp"
#include "grassmann/plucker.hpp"

namespace grassmann {

namespace {

void require_chamber(const MultiVector& omega, const std::string& what) {
  if (omega.is_zero()) throw ValidationError(what + " is zero");
  if (!is_nonnegative(omega)) throw ValidationError(what + " is not nonnegative");
  if (!is_normalized(omega)) throw ValidationError(what + " is not normalized");
  if (!is_decomposable(omega)) throw ValidationError(what + " is not decomposable");
}

void require_tail_support(const MultiVector& omega, const std::string& what) {
  for (const auto& [a, value] : omega.coefficients()) {
    if (a.contains(1)) throw ValidationError(what + " must be supported on indices 2..n");
  }
}

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double sup_norm(const Point& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

Point scaled(Point x, double s) {
  for (auto& v : x) v *= s;
  return x;
}

FiberFrame make_frame(int n, int grade, Matrix<double> lift) {
  const std::size_t rows = lift.size();
  const std::size_t r = rows == 0 ? 0 : lift[0].size();
  Row<double> g(r, 0.0);
  for (const auto& row : lift) {
    for (std::size_t i = 0; i < r; ++i) g[i] += row[i];
  }
  double gg = 0.0;
  for (double x : g) gg += x * x;
  if (gg <= 1e-24) throw DegenerateError("fiber has no normalized point");

  FiberFrame f;
  f.n = n;
  f.grade = grade;
  f.origin = g;
  for (auto& x : f.origin) x /= gg;
  f.basis = hyperplane_basis(g);
  f.polytope.dim = static_cast<int>(r) - 1;
  for (const auto& row : lift) {
    Row<double> normal(f.basis.size(), 0.0);
    double len = 0.0;
    for (std::size_t j = 0; j < f.basis.size(); ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < r; ++i) d += row[i] * f.basis[j][i];
      normal[j] = -d;
      len += d * d;
    }
    if (std::sqrt(len) <= 1e-12) continue;
    double offset = 0.0;
    for (std::size_t i = 0; i < r; ++i) offset += row[i] * f.origin[i];
    f.polytope.constraints.push_back({std::move(normal), offset});
  }
  f.lift = std::move(lift);
  return f;
}

Matrix<double> columns_to_lift(const std::vector<DenseForm>& columns) {
  const std::size_t m = columns.empty() ? 0 : columns[0].c.size();
  Matrix<double> lift(m, Row<double>(columns.size(), 0.0));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) lift[i][j] = columns[j].c[i];
  }
  return lift;
}

FiberFrame side_frame(Side side, const DenseForm& base) {
  return side == Side::E ? e_fiber_frame(base) : f_fiber_frame(base);
}

Point concat3(double tau, const Point& c, const Point& y) {
  Point out{tau};
  out.insert(out.end(), c.begin(), c.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

// Convexoid coordinates (τ, cube point, fiber point) from a base form and
// the form it pairs with. The fiber frame is built from the base form as it
// is recovered from the cube point, so the oracle sees the same frame.
Point encode(const BallChart& base, Side side, double tau, const DenseForm& base_form, const DenseForm& fiber_form,
             int fiber_dim) {
  const Point c = ball_to_cube(base.forward(base_form));
  Point y(static_cast<std::size_t>(fiber_dim), 0.0);
  if (tau < 1.0) {
    const DenseForm recovered = base.inverse(cube_to_ball(c));
    y = scaled(side_frame(side, recovered).coordinates(fiber_form), 1.0 - tau);
  }
  return concat3(tau, c, y);
}

struct Decoded {
  double tau = 0.0;
  DenseForm base_form;
  std::optional<DenseForm> fiber_form;  // absent at τ = 1
};

Decoded decode(const BallChart& base, Side side, const Point& x) {
  const auto nb = static_cast<std::size_t>(base.dim());
  Decoded out;
  out.tau = std::clamp(x[0], 0.0, 1.0);
  const Point c(x.begin() + 1, x.begin() + 1 + static_cast<std::ptrdiff_t>(nb));
  out.base_form = base.inverse(cube_to_ball(c));
  if (out.tau < 1.0) {
    const Point y(x.begin() + 1 + static_cast<std::ptrdiff_t>(nb), x.end());
    out.fiber_form = side_frame(side, out.base_form).point(scaled(y, 1.0 / (1.0 - out.tau)));
  }
  return out;
}

FiberOracle piece_oracle(std::shared_ptr<const BallChart> base, Side side) {
  return [base = std::move(base), side](const Point& p) {
    const double tau = std::clamp(p[0], 0.0, 1.0);
    const Point c(p.begin() + 1, p.end());
    const FiberFrame frame = side_frame(side, base->inverse(cube_to_ball(c)));
    return scale(frame.polytope, 1.0 - tau);
  };
}

std::vector<double> helmert_column(int size, int j) {
  // j-th (1-based) column of the orthonormal Helmert basis of {Σx = 0}
  std::vector<double> h(static_cast<std::size_t>(size), 0.0);
  const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
  for (int i = 0; i < j; ++i) h[static_cast<std::size_t>(i)] = s;
  h[static_cast<std::size_t>(j)] = -j * s;
  return h;
}

double simplex_gauge(const std::vector<double>& d) {
  const auto size = static_cast<double>(d.size());
  double g = 0.0;
  for (double x : d) g = std::max(g, -size * x);
  return g;
}

}  // namespace

ChamberPoint::ChamberPoint(MultiVector rho) : rho_(std::move(rho)) { require_chamber(rho_, "chamber point"); }

SplitTriple split(const ChamberPoint& p) {
  const MultiVector& rho = p.rho();
  const int n = rho.n();
  const int k = rho.grade();
  MultiVector::Coefficients eta0;
  MultiVector::Coefficients rest;
  Rational t;
  for (const auto& [a, value] : rho.coefficients()) {
    if (a.contains(1)) {
      eta0.emplace(a.without(1), value);
      t += value;
    } else {
      rest.emplace(a, value);
    }
  }
  SplitTriple out;
  out.n = n;
  out.k = k;
  out.t = t;
  if (!t.is_zero()) out.eta = MultiVector(n, k - 1, eta0) * (Rational(1) / t);
  if (t != Rational(1)) out.omega = MultiVector(n, k, rest) * (Rational(1) / (Rational(1) - t));
  return out;
}

ChamberPoint assemble(const SplitTriple& s) {
  if (s.n < 1 || s.k < 0 || s.k > s.n) throw ValidationError("invalid (k, n) in split triple");
  if (s.t < Rational(0) || s.t > Rational(1)) throw ValidationError("t must lie in [0, 1]");
  const bool need_eta = !s.t.is_zero();
  const bool need_omega = s.t != Rational(1);
  if (need_eta != s.eta.has_value()) throw ValidationError("eta must be present exactly when t > 0");
  if (need_omega != s.omega.has_value()) throw ValidationError("omega must be present exactly when t < 1");
  MultiVector rho(s.n, s.k);
  if (s.eta) {
    if (s.k < 1 || s.eta->n() != s.n || s.eta->grade() != s.k - 1) throw ValidationError("eta has the wrong shape");
    require_tail_support(*s.eta, "eta");
    require_chamber(*s.eta, "eta");
    rho += s.t * wedge(MultiVector::basis(s.n, IndexSet{1}), *s.eta);
  }
  if (s.omega) {
    if (s.omega->n() != s.n || s.omega->grade() != s.k) throw ValidationError("omega has the wrong shape");
    require_tail_support(*s.omega, "omega");
    require_chamber(*s.omega, "omega");
    rho += (Rational(1) - s.t) * *s.omega;
  }
  if (s.eta && s.omega && !contains(*s.eta, *s.omega)) throw ContainmentError("eta is not contained in omega");
  return ChamberPoint(std::move(rho));
}

DenseSplit split_dense(const DenseForm& rho) {
  const int n = rho.n;
  const int k = rho.k;
  if (n < 2 || k < 0 || k > n) throw DimensionError("split needs n ≥ 2 and 0 ≤ k ≤ n");
  DenseSplit out;
  out.eta = zero_form(n - 1, std::max(k - 1, 0));
  out.omega = zero_form(n - 1, k);
  const auto subsets = k_subsets(n, k);
  double rest = 0.0;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<int> shifted;
    for (int a : subsets[i].elements()) {
      if (a != 1) shifted.push_back(a - 1);
    }
    if (subsets[i].contains(1)) {
      out.eta.c[subset_rank(n - 1, shifted)] = rho.c[i];
      out.t += rho.c[i];
    } else if (k <= n - 1) {
      out.omega.c[subset_rank(n - 1, shifted)] = rho.c[i];
      rest += rho.c[i];
    }
  }
  const double total = out.t + rest;
  if (total <= 0.0) throw NormalizationError("coefficient sum is not positive");
  out.t /= total;
  if (out.t > 0.0) {
    for (auto& x : out.eta.c) x /= out.t * total;
  }
  if (rest > 0.0) {
    for (auto& x : out.omega.c) x /= rest;
  }
  out.t = std::clamp(out.t, 0.0, 1.0);
  return out;
}

DenseForm assemble_dense(int n, int k, double t, const DenseForm& eta, const DenseForm& omega) {
  DenseForm out = zero_form(n, k);
  const auto subsets = k_subsets(n, k);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<int> shifted;
    for (int a : subsets[i].elements()) {
      if (a != 1) shifted.push_back(a - 1);
    }
    if (subsets[i].contains(1)) {
      out.c[i] = t * eta.c[subset_rank(n - 1, shifted)];
    } else {
      out.c[i] = (1.0 - t) * omega.c[subset_rank(n - 1, shifted)];
    }
  }
  return out;
}

Row<double> FiberFrame::coordinates(const DenseForm& target) const {
  if (basis.empty()) return {};
  const Row<double> c = least_squares(lift, target.c);
  Row<double> z(basis.size(), 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < c.size(); ++i) z[j] += basis[j][i] * (c[i] - origin[i]);
  }
  return z;
}

DenseForm FiberFrame::point(const Row<double>& z) const {
  Row<double> c = origin;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += z[j] * basis[j][i];
  }
  DenseForm out = zero_form(n, grade);
  for (std::size_t row = 0; row < lift.size(); ++row) {
    for (std::size_t i = 0; i < c.size(); ++i) out.c[row] += lift[row][i] * c[i];
  }
  return out;
}

FiberFrame e_fiber_frame(const DenseForm& omega) {
  if (omega.k < 1) throw GradeError("E fiber needs grade ≥ 1");
  const Matrix<double> u = orthonormal_range(plane_projector(omega), omega.k);
  std::vector<DenseForm> columns;
  for (const auto& v : u) columns.push_back(contract(omega, v));
  return make_frame(omega.n, omega.k - 1, columns_to_lift(columns));
}

FiberFrame f_fiber_frame(const DenseForm& eta) {
  if (eta.k >= eta.n) throw GradeError("F fiber needs grade < n");
  Matrix<double> p = plane_projector(eta);
  const auto n = static_cast<std::size_t>(eta.n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p[i][j] = (i == j ? 1.0 : 0.0) - p[i][j];
  }
  const Matrix<double> u = orthonormal_range(p, eta.n - eta.k);
  std::vector<DenseForm> columns;
  for (const auto& v : u) columns.push_back(wedge(v, eta));
  return make_frame(eta.n, eta.k + 1, columns_to_lift(columns));
}

HPolytope<double> e_fiber_polytope(const MultiVector& omega) {
  require_tail_support(omega, "omega");
  require_chamber(omega, "omega");
  if (omega.grade() < 1) throw ValidationError("omega must have grade ≥ 1");
  return e_fiber_frame(to_dense(drop_first_index(omega))).polytope;
}

HPolytope<double> f_fiber_polytope(const MultiVector& eta) {
  require_tail_support(eta, "eta");
  require_chamber(eta, "eta");
  if (eta.grade() + 1 > eta.n() - 1) throw ValidationError("eta has no room for a containing plane");
  return f_fiber_frame(to_dense(drop_first_index(eta))).polytope;
}

Point ball_to_cube(const Point& y) {
  const double m = sup_norm(y);
  if (m == 0.0) return y;
  return scaled(y, norm(y) / m);
}

Point cube_to_ball(const Point& c) {
  const double n = norm(c);
  if (n == 0.0) return c;
  return scaled(c, sup_norm(c) / n);
}

BallChart::BallChart(int k, int n) : k_(k), n_(n) {
  if (n < 1 || k < 0 || k > n) throw DimensionError("ball chart needs 0 ≤ k ≤ n and n ≥ 1");
  if (k == 0 || k == n || k == 1 || k == n - 1) return;
  base_e_ = std::make_shared<const BallChart>(k, n - 1);
  base_f_ = std::make_shared<const BallChart>(k - 1, n - 1);

  ConvexoidSpec es{base_e_->dim() + 1, k - 1, piece_oracle(base_e_, Side::E)};
  ConvexoidSpec fs{base_f_->dim() + 1, n - k - 1, piece_oracle(base_f_, Side::F)};
  auto e = std::make_shared<const Convexoid>(std::move(es));
  auto f = std::make_shared<const Convexoid>(std::move(fs));

  BottomMap phi;
  phi.forward = [be = base_e_, bf = base_f_, dim = n - k - 1](const Point& x) {
    const Decoded d = decode(*be, Side::E, x);
    return encode(*bf, Side::F, 0.0, *d.fiber_form, d.base_form, dim);
  };
  phi.inverse = [be = base_e_, bf = base_f_, dim = k - 1](const Point& x) {
    const Decoded d = decode(*bf, Side::F, x);
    return encode(*be, Side::E, 0.0, *d.fiber_form, d.base_form, dim);
  };
  glued_ = std::make_unique<GluedBall>(glue(std::move(e), std::move(f), std::move(phi)));
}

Point BallChart::forward(const ChamberPoint& p) const {
  if (p.k() != k_ || p.n() != n_) throw DimensionError("chamber point has the wrong (k, n)");
  return forward(to_dense(p.rho()));
}

Point BallChart::forward(const DenseForm& rho) const {
  if (rho.k != k_ || rho.n != n_) throw DimensionError("form has the wrong (k, n)");
  if (dim() == 0) return {};
  if (!glued_) return simplex_forward(rho);
  const DenseSplit s = split_dense(rho);
  const Side side = s.t <= 0.5 ? Side::E : Side::F;
  return glued_->map(side, piece_coordinates(s, side));
}

Point BallChart::forward(const DenseForm& rho, Side side) const {
  if (rho.k != k_ || rho.n != n_) throw DimensionError("form has the wrong (k, n)");
  if (!glued_) throw DomainError("forced routes exist only for glued charts");
  const DenseSplit s = split_dense(rho);
  if ((side == Side::E && s.t > 0.5 + 1e-12) || (side == Side::F && s.t < 0.5 - 1e-12)) {
    throw DomainError("point does not lie in the requested piece");
  }
  return glued_->map(side, piece_coordinates(s, side));
}

Point BallChart::piece_coordinates(const DenseSplit& s, Side side) const {
  if (!glued_) throw DomainError("piece coordinates exist only for glued charts");
  if (side == Side::E) {
    const double tau = std::clamp(1.0 - 2.0 * s.t, 0.0, 1.0);
    return encode(*base_e_, Side::E, tau, s.omega, s.eta, k_ - 1);
  }
  const double tau = std::clamp(2.0 * s.t - 1.0, 0.0, 1.0);
  return encode(*base_f_, Side::F, tau, s.eta, s.omega, n_ - k_ - 1);
}

DenseForm BallChart::inverse(const Point& c) const {
  if (static_cast<int>(c.size()) != dim()) throw DimensionError("ball point has the wrong dimension");
  const double len = norm(c);
  if (len > 1.0 + 1e-9) throw DomainError("point is outside the closed unit ball");
  const Point b = len > 1.0 ? scaled(c, 1.0 / len) : c;
  if (dim() == 0) {
    DenseForm out = zero_form(n_, k_);
    out.c[0] = 1.0;
    return out;
  }
  if (!glued_) return simplex_inverse(b);
  const auto [side, x] = glued_->inverse(b);
  return piece_point(x, side);
}

DenseForm BallChart::piece_point(const Point& x, Side side) const {
  if (side == Side::E) {
    const Decoded d = decode(*base_e_, Side::E, x);
    const double t = (1.0 - d.tau) / 2.0;
    const DenseForm eta = d.fiber_form ? *d.fiber_form : zero_form(n_ - 1, k_ - 1);
    return assemble_dense(n_, k_, t, eta, d.base_form);
  }
  const Decoded d = decode(*base_f_, Side::F, x);
  const double t = (1.0 + d.tau) / 2.0;
  const DenseForm omega = d.fiber_form ? *d.fiber_form : zero_form(n_ - 1, k_);
  return assemble_dense(n_, k_, t, d.base_form, omega);
}

// Simplex of normalized coefficient vectors → ball: center at the
// barycenter, then send each ray's boundary point to the unit sphere.
Point BallChart::simplex_forward(const DenseForm& rho) const {
  const int size = static_cast<int>(rho.c.size());
  const double total = rho.sum();
  if (total <= 0.0) throw NormalizationError("coefficient sum is not positive");
  std::vector<double> d(rho.c.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = rho.c[i] / total - 1.0 / size;
  Point u(static_cast<std::size_t>(size - 1), 0.0);
  for (int j = 1; j < size; ++j) {
    const auto h = helmert_column(size, j);
    for (std::size_t i = 0; i < d.size(); ++i) u[static_cast<std::size_t>(j - 1)] += h[i] * d[i];
  }
  const double len = norm(u);
  if (len == 0.0) return u;
  return scaled(u, simplex_gauge(d) / len);
}

DenseForm BallChart::simplex_inverse(const Point& y) const {
  const int size = static_cast<int>(y.size()) + 1;
  DenseForm out = zero_form(n_, k_);
  for (auto& x : out.c) x = 1.0 / size;
  const double r = norm(y);
  if (r == 0.0) return out;
  std::vector<double> d(static_cast<std::size_t>(size), 0.0);
  for (int j = 1; j < size; ++j) {
    const auto h = helmert_column(size, j);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += h[i] * y[static_cast<std::size_t>(j - 1)] / r;
  }
  const double g = simplex_gauge(d);
  for (std::size_t i = 0; i < d.size(); ++i) out.c[i] += r * d[i] / g;
  return out;
}

Point ball_chart(const ChamberPoint& p) { return BallChart(p.k(), p.n()).forward(p); }

DenseForm ball_chart_inverse(const Point& c, int k, int n) { return BallChart(k, n).inverse(c); }

}  // namespace grassmann
