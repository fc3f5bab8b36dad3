#include "grassmann/convexoid.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace grassmann {

namespace {

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

Point head(const Point& x, int n) { return {x.begin(), x.begin() + n}; }
Point tail(const Point& x, int n) { return {x.begin() + n, x.end()}; }

Point concat(const Point& a, const Point& b) {
  Point out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Point scaled(Point x, double s) {
  for (auto& v : x) v *= s;
  return x;
}

bool all_zero(const Point& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

// Slack used by the exit-time membership test; far below the bisection tolerance.
constexpr double kRayslack = 1e-13;

}  // namespace

void ConvexoidSpec::validate() const {
  if (base_dim < 1) throw ValidationError("convexoid base dimension must be at least 1");
  if (fiber_dim < 0) throw ValidationError("convexoid fiber dimension must be nonnegative");
  if (!fiber) throw ValidationError("convexoid has no fiber oracle");
}

double base_gauge(const Point& p) {
  double g = p.empty() ? 0.0 : std::max(p[0], 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) g = std::max(g, std::abs(p[i]));
  return g;
}

bool in_base_cube(const Point& p, double tol) {
  if (p.empty() || p[0] < -tol || p[0] > 1.0 + tol) return false;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (std::abs(p[i]) > 1.0 + tol) return false;
  }
  return true;
}

RadialProjection radial_project_base(const Point& p) {
  const double g = base_gauge(p);
  if (g <= 0.0) throw DomainError("radial projection of the base origin");
  return {scaled(p, 1.0 / g), g};
}

CenteredFiber centered_fiber(const ConvexoidSpec& spec, const Point& p) {
  const HPolytope<double> raw = spec.fiber(p);
  if (raw.dim != spec.fiber_dim) throw DimensionError("fiber oracle returned the wrong dimension");
  const auto verts = vertices(raw);
  if (verts.empty()) throw DegenerateError("empty fiber");
  CenteredFiber out;
  out.barycenter = detail::centroid(raw, verts, affine_dimension(verts), 1e-9);
  Point shift = scaled(out.barycenter, -1.0);
  out.polytope = translate(raw, shift);
  for (const auto& v : verts) {
    Row<double> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] + shift[i];
    out.vertices.push_back(std::move(c));
  }
  return out;
}

ConvexoidSpec center_fibers(const ConvexoidSpec& spec) {
  spec.validate();
  ConvexoidSpec out = spec;
  out.fiber = [spec](const Point& p) { return centered_fiber(spec, p).polytope; };
  return out;
}

// Data for the rays through one point q of the distinguished boundary:
// E′(s·q) = (1−s)E(0) ⊕ sE(q) shares the facet normals of E(0) ⊕ E(q) for
// every s ∈ (0,1), with offsets interpolating the two support functions.
struct Convexoid::Ray {
  Point q;
  CenteredFiber top;
  std::vector<Row<double>> normals;
  std::vector<double> h_origin;
  std::vector<double> h_top;

  [[nodiscard]] HPolytope<double> join(double s, const HPolytope<double>& origin, double boundary) const {
    if (s <= 0.0) return origin;
    if (s >= 1.0 - boundary) return top.polytope;
    HPolytope<double> out;
    out.dim = origin.dim;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      out.constraints.push_back({normals[i], (1.0 - s) * h_origin[i] + s * h_top[i]});
    }
    return out;
  }
};

Convexoid::Convexoid(ConvexoidSpec spec, ConvexoidTolerances tol) : spec_(std::move(spec)), tol_(tol) {
  spec_.validate();
  origin_ = centered_fiber(spec_, Point(static_cast<std::size_t>(spec_.base_dim), 0.0));
  if (affine_dimension(origin_.vertices) < spec_.fiber_dim) {
    throw DegenerateError("the fiber over the base origin must have nonempty interior");
  }
}

Convexoid::Ray Convexoid::ray(const Point& q) const {
  Ray r;
  r.q = q;
  r.top = centered_fiber(spec_, q);
  if (spec_.fiber_dim == 0) return r;
  const auto sum = hull(minkowski_points(origin_.vertices, 0.5, r.top.vertices, 0.5));
  for (const auto& h : sum.constraints) {
    r.normals.push_back(h.normal);
    r.h_origin.push_back(support(origin_.vertices, h.normal));
    r.h_top.push_back(support(r.top.vertices, h.normal));
  }
  return r;
}

HPolytope<double> Convexoid::join_fiber(const Point& p) const {
  if (static_cast<int>(p.size()) != spec_.base_dim) throw DimensionError("base point has the wrong dimension");
  const double g = base_gauge(p);
  if (g <= 0.0) return origin_.polytope;
  const auto proj = radial_project_base(p);
  return ray(proj.point).join(proj.s, origin_.polytope, tol_.boundary);
}

double Convexoid::exit_along(const Point& v, const Ray* r) const {
  const int nb = spec_.base_dim;
  const Point vb = head(v, nb);
  const Point vy = tail(v, nb);
  const double g = base_gauge(vb);
  if (g <= 0.0 || r == nullptr) {
    if (spec_.fiber_dim == 0 || all_zero(vy)) throw DomainError("exit time along a zero direction");
    return radial_function(origin_.polytope, vy);
  }
  const double upper = 1.0 / g;
  auto member = [&](double t) {
    const double s = t * g;
    if (s > 1.0 + kRayslack) return false;
    const Point y = scaled(vy, t);
    if (s >= 1.0 - tol_.boundary) return satisfies(r->top.polytope, y, kRayslack);
    for (std::size_t i = 0; i < r->normals.size(); ++i) {
      if (detail::dot(r->normals[i], y) > (1.0 - s) * r->h_origin[i] + s * r->h_top[i] + kRayslack) return false;
    }
    return true;
  };

  // Coarse doubling scan over (0, upper], then bisection on the first bracket.
  const int levels = tol_.scan_levels;
  double lo = 0.0;
  double hi = -1.0;
  for (int j = 0; j <= levels; ++j) {
    const double t = std::ldexp(upper, j - levels);
    const bool in = member(t);
    if (hi < 0.0) {
      if (in) {
        lo = t;
      } else {
        hi = t;
      }
    } else if (in) {
      throw StarConvexityViolation("ray re-enters the join body");
    }
  }
  if (hi < 0.0) return upper;
  for (int it = 0; it < 200 && hi - lo > tol_.exit; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (member(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ExitTime Convexoid::exit_time(const Point& v) const {
  if (static_cast<int>(v.size()) != dim()) throw DimensionError("direction has the wrong dimension");
  const double n = norm(v);
  if (n == 0.0) throw DomainError("exit time along the zero direction");
  const Point u = scaled(v, 1.0 / n);
  const Point ub = head(u, spec_.base_dim);
  if (base_gauge(ub) <= 0.0) return {u, exit_along(u, nullptr)};
  const Ray r = ray(radial_project_base(ub).point);
  return {u, exit_along(u, &r)};
}

double Convexoid::rescale_factor(const Point& p, const CenteredFiber& fiber, const Ray* r, const Point& y) const {
  if (r == nullptr || all_zero(y)) return 1.0;
  const double s = base_gauge(p);
  if (s >= 1.0 - tol_.boundary) return 1.0;
  const Point u = scaled(y, 1.0 / norm(y));
  const double r_fiber = radial_function(fiber.polytope, u);
  if (r_fiber <= 0.0) return 1.0;  // 0 on the fiber boundary: only possible over the distinguished boundary
  return radial_function(r->join(s, origin_.polytope, tol_.boundary), u) / r_fiber;
}

bool Convexoid::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  const Point p = head(x, spec_.base_dim);
  if (!in_base_cube(p, tol_.membership)) return false;
  return satisfies(spec_.fiber(p), tail(x, spec_.base_dim), tol_.membership);
}

Point Convexoid::to_half_ball(const Point& x) const {
  if (static_cast<int>(x.size()) != dim()) throw DimensionError("point has the wrong dimension");
  if (!contains(x)) throw DomainError("point is not in the convexoid");
  const int nb = spec_.base_dim;
  const Point p = head(x, nb);
  const CenteredFiber fiber = centered_fiber(spec_, p);
  Point y = tail(x, nb);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= fiber.barycenter[i];

  std::optional<Ray> r;
  if (base_gauge(p) > 0.0) r = ray(radial_project_base(p).point);
  const Ray* rp = r ? &*r : nullptr;
  const Point w = concat(p, scaled(y, rescale_factor(p, fiber, rp, y)));
  const double n = norm(w);
  if (n == 0.0) return w;
  return scaled(w, 1.0 / exit_along(scaled(w, 1.0 / n), rp));
}

Point Convexoid::from_half_ball(const Point& h_in) const {
  if (static_cast<int>(h_in.size()) != dim()) throw DimensionError("point has the wrong dimension");
  Point h = h_in;
  if (h[0] < -1e-9 || norm(h) > 1.0 + 1e-9) throw DomainError("point is not in the closed half-ball");
  h[0] = std::max(h[0], 0.0);
  const int nb = spec_.base_dim;
  const double n = norm(h);
  if (n == 0.0) return concat(Point(static_cast<std::size_t>(nb), 0.0), origin_.barycenter);

  const Point v = scaled(h, 1.0 / n);
  std::optional<Ray> r;
  if (base_gauge(head(v, nb)) > 0.0) r = ray(radial_project_base(head(v, nb)).point);
  const Ray* rp = r ? &*r : nullptr;
  const Point w = scaled(h, exit_along(v, rp));
  Point p = head(w, nb);
  p[0] = std::max(p[0], 0.0);
  const CenteredFiber fiber = centered_fiber(spec_, p);
  Point y = tail(w, nb);
  y = scaled(y, 1.0 / rescale_factor(p, fiber, rp, y));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += fiber.barycenter[i];
  return concat(p, y);
}

HPolytope<double> join_fiber(const ConvexoidSpec& centered, const Point& p) {
  return Convexoid(centered).join_fiber(p);
}

ExitTime exit_time(const ConvexoidSpec& centered, const Point& v, const ConvexoidTolerances& tol) {
  return Convexoid(centered, tol).exit_time(v);
}

Point half_ball_to_cylinder(const Point& h) {
  const double n = norm(h);
  if (n == 0.0) return h;
  const double g = std::max(h[0], norm(tail(h, 1)));
  return scaled(h, n / g);
}

Point cylinder_to_half_ball(const Point& c) {
  const double n = norm(c);
  if (n == 0.0) return c;
  const double g = std::max(c[0], norm(tail(c, 1)));
  return scaled(c, g / n);
}

Point cylinder_to_ball(const Point& q) {
  const double n = norm(q);
  if (n == 0.0) return q;
  return scaled(q, std::max(std::abs(q[0]), norm(tail(q, 1))) / n);
}

Point ball_to_cylinder(const Point& b) {
  const double n = norm(b);
  if (n == 0.0) return b;
  return scaled(b, n / std::max(std::abs(b[0]), norm(tail(b, 1))));
}

GluedBall::GluedBall(std::shared_ptr<const Convexoid> e, std::shared_ptr<const Convexoid> f, BottomMap phi)
    : e_(std::move(e)), f_(std::move(f)), phi_(std::move(phi)) {
  if (e_->dim() != f_->dim()) throw DimensionError("glued convexoids must have the same dimension");
  if (!phi_.forward || !phi_.inverse) throw ValidationError("bottom identification needs both directions");
}

Point GluedBall::twist(const Point& c) const {
  const Point xf = f_->from_half_ball(concat({0.0}, c));
  const Point h = e_->to_half_ball(phi_.inverse(xf));
  return tail(h, 1);
}

Point GluedBall::untwist(const Point& c) const {
  const Point xe = e_->from_half_ball(concat({0.0}, c));
  const Point h = f_->to_half_ball(phi_.forward(xe));
  return tail(h, 1);
}

Point GluedBall::map(Side side, const Point& x) const {
  if (side == Side::E) {
    const Point c = half_ball_to_cylinder(e_->to_half_ball(x));
    return cylinder_to_ball(concat({-c[0]}, tail(c, 1)));
  }
  const Point c = half_ball_to_cylinder(f_->to_half_ball(x));
  return cylinder_to_ball(concat({c[0]}, twist(tail(c, 1))));
}

std::pair<Side, Point> GluedBall::inverse(const Point& b) const {
  if (static_cast<int>(b.size()) != dim()) throw DimensionError("ball point has the wrong dimension");
  if (norm(b) > 1.0 + 1e-9) throw DomainError("point is outside the closed ball");
  const Point q = ball_to_cylinder(b);
  if (q[0] <= 0.0) {
    const Point c = concat({-q[0]}, tail(q, 1));
    return {Side::E, e_->from_half_ball(cylinder_to_half_ball(c))};
  }
  const Point c = concat({q[0]}, untwist(tail(q, 1)));
  return {Side::F, f_->from_half_ball(cylinder_to_half_ball(c))};
}

GluedBall glue(std::shared_ptr<const Convexoid> e, std::shared_ptr<const Convexoid> f, BottomMap phi,
               const GlueOptions& options) {
  GluedBall out(std::move(e), std::move(f), std::move(phi));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int nb = out.e().base_dim();
  for (int i = 0; i < options.validation_samples; ++i) {
    Point p(static_cast<std::size_t>(nb), 0.0);
    for (int j = 1; j < nb; ++j) p[static_cast<std::size_t>(j)] = 1.8 * unit(rng) - 0.9;
    const auto verts = vertices(out.e().spec().fiber(p));
    if (verts.empty()) throw GluingError("empty bottom fiber in E");
    Point y(static_cast<std::size_t>(out.e().fiber_dim()), 0.0);
    double total = 0.0;
    for (const auto& v : verts) {
      const double w = -std::log(1.0 - unit(rng));
      total += w;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] += w * v[k];
    }
    const Point x = concat(p, scaled(y, 1.0 / total));
    const Point xf = out.phi().forward(x);
    if (static_cast<int>(xf.size()) != out.f().dim() || std::abs(xf[0]) > options.tolerance || !out.f().contains(xf)) {
      throw GluingError("bottom identification does not land on the bottom of F");
    }
    const Point back = out.phi().inverse(xf);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (std::abs(back[k] - x[k]) > options.tolerance) throw GluingError("bottom identification is not invertible");
    }
  }
  return out;
}

}  // namespace grassmann
