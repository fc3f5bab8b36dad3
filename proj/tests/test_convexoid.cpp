#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "grassmann/convexoid.hpp"

using namespace grassmann;

namespace {

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double norm(const Point& a) { return dist(a, Point(a.size(), 0.0)); }

HPolytope<double> interval(double lo, double hi) {
  HPolytope<double> p;
  p.dim = 1;
  p.constraints.push_back({{1.0}, hi});
  p.constraints.push_back({{-1.0}, -lo});
  return p;
}

ConvexoidSpec square() {
  return {1, 1, [](const Point&) { return interval(-1.0, 1.0); }};
}

// Fibers with fixed normals and offsets varying smoothly over the base,
// translated by a base-dependent shift so centering matters.
struct RandomFamily {
  int nb;
  int m;
  std::vector<Row<double>> normals;
  std::vector<double> c;
  std::vector<Point> a;
  Point shift;

  HPolytope<double> operator()(const Point& p) const {
    HPolytope<double> out;
    out.dim = m;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      double off = c[i];
      for (int j = 0; j < nb; ++j) off += a[i][static_cast<std::size_t>(j)] * std::sin(1.3 * p[static_cast<std::size_t>(j)] + static_cast<double>(i));
      double sh = 0.0;
      for (int j = 0; j < m; ++j) sh += normals[i][static_cast<std::size_t>(j)] * shift[static_cast<std::size_t>(j)] * p[0];
      out.constraints.push_back({normals[i], off + sh});
    }
    return out;
  }
};

ConvexoidSpec random_spec(std::mt19937_64& rng, int nb, int m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomFamily f{nb, m, {}, {}, {}, {}};
  if (m == 1) {
    f.normals = {{1.0}, {-1.0}};
  } else {
    const int count = 3 + static_cast<int>(rng() % 4);
    const double phase = u(rng);
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * M_PI * (i + phase + 0.3 * u(rng)) / count;
      f.normals.push_back({std::cos(th), std::sin(th)});
    }
  }
  for (std::size_t i = 0; i < f.normals.size(); ++i) {
    f.c.push_back(0.6 + u(rng));
    Point ai(static_cast<std::size_t>(nb));
    for (auto& x : ai) x = 0.4 * (u(rng) - 0.5) / nb;
    f.a.push_back(ai);
  }
  f.shift = Point(static_cast<std::size_t>(m));
  for (auto& x : f.shift) x = u(rng) - 0.5;
  return {nb, m, f};
}

Point random_point(std::mt19937_64& rng, const ConvexoidSpec& spec, bool bottom = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p(static_cast<std::size_t>(spec.base_dim));
  p[0] = bottom ? 0.0 : u(rng);
  for (std::size_t j = 1; j < p.size(); ++j) p[j] = 2.0 * u(rng) - 1.0;
  const auto verts = vertices(spec.fiber(p));
  Point y(static_cast<std::size_t>(spec.fiber_dim), 0.0);
  double total = 0.0;
  for (const auto& v : verts) {
    const double w = -std::log(1.0 - u(rng));
    total += w;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += w * v[k];
  }
  for (auto& x : y) x /= total;
  p.insert(p.end(), y.begin(), y.end());
  return p;
}

Point random_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Point v(static_cast<std::size_t>(dim));
  for (auto& x : v) x = g(rng);
  v[0] = std::abs(v[0]);
  const double n = norm(v);
  for (auto& x : v) x /= n;
  return v;
}

}  // namespace

TEST_CASE("radial projection of the base") {
  const auto a = radial_project_base({0.3});
  CHECK(a.point[0] == doctest::Approx(1.0));
  CHECK(a.s == doctest::Approx(0.3));
  const auto b = radial_project_base({1.0, 0.4});
  CHECK(b.s == doctest::Approx(1.0));
  CHECK(b.point[1] == doctest::Approx(0.4));
  // per-facet ray intersection: smallest positive hit among p0 = 1, p1 = ±1
  const Point p{0.2, 0.5};
  const double hit = std::min(1.0 / p[0], 1.0 / std::abs(p[1]));
  const auto c = radial_project_base(p);
  CHECK(c.point[0] == doctest::Approx(p[0] * hit));
  CHECK(c.point[1] == doctest::Approx(p[1] * hit));
  CHECK(c.s == doctest::Approx(1.0 / hit));
  CHECK_THROWS_AS(radial_project_base({0.0, 0.0}), DomainError);
}

TEST_CASE("centering fibers") {
  const ConvexoidSpec shifted{1, 1, [](const Point&) { return interval(0.0, 2.0); }};
  const auto centered = center_fibers(shifted);
  const auto v = vertices(centered.fiber({0.5}));
  REQUIRE(v.size() == 2);
  CHECK(std::min(v[0][0], v[1][0]) == doctest::Approx(-1.0));
  CHECK(std::max(v[0][0], v[1][0]) == doctest::Approx(1.0));
  const auto twice = center_fibers(centered);
  CHECK(barycenter(twice.fiber({0.3}))[0] == doctest::Approx(0.0));
}

TEST_CASE("join fibers") {
  const ConvexoidSpec growing{1, 1, [](const Point& p) { return interval(-1.0 - p[0], 1.0 + p[0]); }};
  const Convexoid c(growing);
  const auto v = vertices(c.join_fiber({0.5}));
  REQUIRE(v.size() == 2);
  CHECK(std::max(v[0][0], v[1][0]) == doctest::Approx(1.5));
  const auto top = vertices(c.join_fiber({1.0}));
  CHECK(std::max(top[0][0], top[1][0]) == doctest::Approx(2.0));
  const Convexoid sq(square());
  const auto same = vertices(sq.join_fiber({0.7}));
  CHECK(std::max(same[0][0], same[1][0]) == doctest::Approx(1.0));
}

TEST_CASE("join fiber contains every sampled segment point") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 2;
    const ConvexoidSpec spec = center_fibers(random_spec(rng, 2, m));
    const Convexoid c(spec);
    const Point q{1.0, 2.0 * u(rng) - 1.0};
    const auto a = vertices(spec.fiber({0.0, 0.0}));
    const auto b = vertices(spec.fiber(q));
    for (int s = 0; s < 50; ++s) {
      const double t = u(rng);
      const auto& x = a[rng() % a.size()];
      const auto& y = b[rng() % b.size()];
      Point z(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) z[static_cast<std::size_t>(k)] = (1 - t) * x[static_cast<std::size_t>(k)] + t * y[static_cast<std::size_t>(k)];
      CHECK(satisfies(c.join_fiber({t * q[0], t * q[1]}), z, 1e-9));
    }
  }
}

TEST_CASE("exit times on the constant square") {
  const Convexoid c(square());
  CHECK(c.exit_time({1.0, 0.0}).T == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.exit_time({0.0, 1.0}).T == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.exit_time({1.0, 1.0}).T == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(exit_time(square(), {1.0, 1.0}).T == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK_THROWS_AS((void)c.exit_time({0.0, 0.0}), DomainError);
}

TEST_CASE("exit times agree with interval arithmetic") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const ConvexoidSpec spec = center_fibers(random_spec(rng, 1 + trial % 2, 1));
    const Convexoid c(spec);
    const Point v = random_direction(rng, c.dim());
    const Point vb(v.begin(), v.end() - 1);
    const double vy = v.back();
    const double g = base_gauge(vb);
    const auto a = vertices(spec.fiber(Point(vb.size(), 0.0)));
    const double alo = std::min(a[0][0], a[1][0]);
    const double ahi = std::max(a[0][0], a[1][0]);
    double expected = 0.0;
    if (g == 0.0) {
      expected = vy > 0 ? ahi / vy : alo / vy;
    } else {
      Point q = vb;
      for (auto& x : q) x /= g;
      const auto b = vertices(spec.fiber(q));
      const double blo = std::min(b[0][0], b[1][0]);
      const double bhi = std::max(b[0][0], b[1][0]);
      // t·vy ≤ (1 − t g) ahi + t g bhi and t·vy ≥ (1 − t g) alo + t g blo, t ≤ 1/g
      expected = 1.0 / g;
      const double up = vy + g * ahi - g * bhi;
      if (up > 0) expected = std::min(expected, ahi / up);
      const double down = -vy - g * alo + g * blo;
      if (down > 0) expected = std::min(expected, -alo / down);
    }
    CHECK(c.exit_time(v).T == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("exit times in two-dimensional fibers agree with support functions") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const ConvexoidSpec spec = center_fibers(random_spec(rng, 2, 2));
    const Convexoid c(spec);
    const Point v = random_direction(rng, c.dim());
    const double T = c.exit_time(v).T;
    const Point vb{v[0], v[1]};
    const double g = base_gauge(vb);
    const auto a = vertices(spec.fiber({0.0, 0.0}));
    const auto b = vertices(spec.fiber({v[0] / g, v[1] / g}));
    // y ∈ (1−s)A + sB iff every support inequality holds; check just inside and outside
    auto inside = [&](double t) {
      const double s = t * g;
      if (s > 1.0) return false;
      for (int k = 0; k < 100000; ++k) {
        const double th = 2.0 * M_PI * k / 100000;
        const Row<double> n{std::cos(th), std::sin(th)};
        const double y = t * (n[0] * v[2] + n[1] * v[3]);
        if (y > (1 - s) * support(a, n) + s * support(b, n) + 1e-12) return false;
      }
      return true;
    };
    CHECK(inside(T * (1 - 1e-3)));
    if (T < 1.0 / g - 1e-9) CHECK_FALSE(inside(T * (1 + 1e-3)));
  }
}

TEST_CASE("square to half-disk") {
  const Convexoid c(square());
  const Point h = c.to_half_ball({1.0, 1.0});
  CHECK(h[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(h[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  for (double y : {-1.0, -0.5, 0.0, 0.25, 1.0}) {
    const Point b = c.to_half_ball({0.0, y});
    CHECK(std::abs(b[0]) <= 1e-9);
    CHECK(b[1] == doctest::Approx(y).epsilon(1e-9));
  }
  CHECK(norm(c.to_half_ball({0.0, 0.0})) == 0.0);
  CHECK_THROWS_AS((void)c.to_half_ball({0.5, 1.5}), DomainError);
  CHECK_THROWS_AS((void)c.from_half_ball({-0.5, 0.0}), DomainError);
}

TEST_CASE("half-ball round trips and invariants on random convexoids") {
  std::mt19937_64 rng(44);
  double worst = 0.0;
  int count = 0;
  for (int family = 0; family < 8; ++family) {
    const int nb = 1 + family % 2;
    const int m = 1 + (family / 2) % 2;
    const Convexoid c(random_spec(rng, nb, m));
    for (int s = 0; s < 25; ++s) {
      const Point x = random_point(rng, c.spec());
      const Point h = c.to_half_ball(x);
      CHECK(norm(h) <= 1.0 + 1e-9);
      CHECK(h[0] >= -1e-12);
      worst = std::max(worst, dist(c.from_half_ball(h), x));
      ++count;
      const Point b = c.to_half_ball(random_point(rng, c.spec(), true));
      CHECK(std::abs(b[0]) <= 1e-9);
    }
  }
  MESSAGE("half-ball round trip max error over " << count << " points: " << worst);
  CHECK(worst <= 1e-6);
}

TEST_CASE("rescale is the identity over the origin and the distinguished boundary") {
  std::mt19937_64 rng(45);
  const ConvexoidSpec spec = random_spec(rng, 2, 2);
  const Convexoid c(spec);
  // Over the base origin the map is y ↦ (y − b)/T with T the radial function of E(0).
  const CenteredFiber f0 = centered_fiber(spec, {0.0, 0.0});
  const Point x{0.0, 0.0, f0.barycenter[0] + 0.2, f0.barycenter[1] - 0.1};
  const Point h = c.to_half_ball(x);
  const double len = std::sqrt(0.05);
  const double r = radial_function(f0.polytope, {0.2 / len, -0.1 / len});
  CHECK(h[2] == doctest::Approx(0.2 / r).epsilon(1e-9));
  CHECK(h[3] == doctest::Approx(-0.1 / r).epsilon(1e-9));
  // Boundary points of fibers over dQ and points over the top face land on the sphere.
  for (int s = 0; s < 20; ++s) {
    Point p = random_point(rng, spec);
    p[0] = 1.0;
    const auto verts = vertices(spec.fiber({p[0], p[1]}));
    Point x2 = p;
    const auto& v = verts[rng() % verts.size()];
    x2[2] = v[0];
    x2[3] = v[1];
    CHECK(norm(c.to_half_ball(x2)) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("no re-entry along random rays") {
  std::mt19937_64 rng(46);
  int violations = 0;
  int rays = 0;
  for (int family = 0; family < 20; ++family) {
    const Convexoid c(random_spec(rng, 1 + family % 2, 1 + (family / 2) % 2));
    for (int s = 0; s < 500; ++s) {
      try {
        (void)c.exit_time(random_direction(rng, c.dim()));
      } catch (const StarConvexityViolation&) {
        ++violations;
      }
      ++rays;
    }
  }
  MESSAGE("re-entry observed on " << violations << " of " << rays << " rays");
  CHECK(violations == 0);
}

TEST_CASE("continuity and injectivity on samples") {
  std::mt19937_64 rng(47);
  const Convexoid c(random_spec(rng, 2, 2));
  for (double delta : {1e-3, 1e-4, 1e-5}) {
    double worst = 0.0;
    for (int s = 0; s < 30; ++s) {
      const Point x = random_point(rng, c.spec());
      Point y = random_point(rng, c.spec());
      // move a distance δ from x toward y, staying inside by convexity
      const double d = dist(x, y);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + (y[i] - x[i]) * delta / d;
      worst = std::max(worst, dist(c.to_half_ball(x), c.to_half_ball(y)) / delta);
    }
    MESSAGE("continuity modulus at delta " << delta << ": " << worst);
    CHECK(worst < 100.0);
  }
  std::vector<Point> in;
  std::vector<Point> out;
  for (int s = 0; s < 200; ++s) {
    in.push_back(random_point(rng, c.spec()));
    out.push_back(c.to_half_ball(in.back()));
  }
  int collisions = 0;
  int pairs = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    for (std::size_t j = i + 1; j < in.size(); ++j) {
      if (dist(in[i], in[j]) < 1e-6) continue;
      ++pairs;
      if (dist(out[i], out[j]) == 0.0) ++collisions;
    }
  }
  CHECK(pairs >= 10000);
  CHECK(collisions == 0);
}

TEST_CASE("cylinder maps") {
  CHECK(half_ball_to_cylinder({0.0, 0.3})[1] == doctest::Approx(0.3));
  const Point c = half_ball_to_cylinder({std::sqrt(0.5), std::sqrt(0.5)});
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(1.0));
  std::mt19937_64 rng(48);
  for (int s = 0; s < 100; ++s) {
    Point h = random_direction(rng, 3);
    for (auto& x : h) x *= 0.9;
    CHECK(dist(cylinder_to_half_ball(half_ball_to_cylinder(h)), h) < 1e-12);
    Point b = random_direction(rng, 3);
    b[0] = (s % 2 == 0 ? -0.5 : 0.5) * b[0];
    CHECK(dist(cylinder_to_ball(ball_to_cylinder(b)), b) < 1e-12);
  }
  CHECK(norm(cylinder_to_ball({-1.0, 1.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("two half-disks glue to a disk") {
  auto e = std::make_shared<const Convexoid>(square());
  auto f = std::make_shared<const Convexoid>(square());
  const BottomMap identity{[](const Point& x) { return x; }, [](const Point& x) { return x; }};
  const GluedBall ball = glue(e, f, identity);
  for (double y : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    const Point a = ball.map(Side::E, {0.0, y});
    const Point b = ball.map(Side::F, {0.0, y});
    CHECK(dist(a, b) <= 1e-9);
    CHECK(std::abs(a[0]) <= 1e-9);
  }
  std::mt19937_64 rng(49);
  for (int s = 0; s < 50; ++s) {
    const Side side = s % 2 == 0 ? Side::E : Side::F;
    const Point x = random_point(rng, square());
    const Point b = ball.map(side, x);
    CHECK(norm(b) <= 1.0 + 1e-9);
    const auto [back_side, back] = ball.inverse(b);
    CHECK(back_side == side);
    CHECK(dist(back, x) <= 1e-6);
  }
  CHECK(norm(ball.map(Side::E, {1.0, 0.3})) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gluing with a nontrivial bottom identification") {
  auto e = std::make_shared<const Convexoid>(square());
  auto f = std::make_shared<const Convexoid>(square());
  const BottomMap bend{[](const Point& x) { return Point{x[0], x[1] * std::abs(x[1])}; },
                       [](const Point& x) { return Point{x[0], std::copysign(std::sqrt(std::abs(x[1])), x[1])}; }};
  const GluedBall ball = glue(e, f, bend);
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 50; ++s) {
    const Point x{0.0, u(rng)};
    CHECK(dist(ball.map(Side::E, x), ball.map(Side::F, bend.forward(x))) <= 1e-6);
  }
  const BottomMap broken{[](const Point& x) { return Point{x[0], 0.5 * x[1]}; },
                         [](const Point& x) { return x; }};
  CHECK_THROWS_AS(glue(e, f, broken), GluingError);
}
