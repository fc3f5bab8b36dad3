#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "grassmann/chamber.hpp"
#include "grassmann/errors.hpp"
#include "grassmann/plucker.hpp"
#include "grassmann/sampling.hpp"
#include "oracles.hpp"

using namespace grassmann;

namespace {

MultiVector e(int n, std::initializer_list<int> idx) { return MultiVector::basis(n, IndexSet(idx)); }

MultiVector worked_example() {
  const std::vector<Rational> c{{1, 10}, {2, 10}, {3, 10}, {1, 10}, {2, 10}, {1, 10}};
  return MultiVector::from_dense(4, 2, c);
}

double max_diff(const DenseForm& a, const DenseForm& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double length(const Point& a) { return distance(a, Point(a.size(), 0.0)); }

double hausdorff(const std::vector<Row<double>>& a, const std::vector<Row<double>>& b) {
  auto one_side = [](const auto& x, const auto& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = 1e300;
      for (const auto& q : y) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

// The plane of m with every entry moved by δ·(i + 2j + 1)/10.
MultiVector perturbed(const PlaneMatrix& m, const Rational& delta) {
  Matrix<Rational> rows = m.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      rows[i][j] += delta * Rational(static_cast<long>(i + 2 * j + 1), 10);
    }
  }
  return normalize(plucker_of_rows(m.n(), rows));
}

}  // namespace

TEST_CASE("chamber point validation") {
  CHECK_NOTHROW(ChamberPoint(worked_example()));
  CHECK_THROWS_AS(ChamberPoint(e(4, {1, 2}) + e(4, {3, 4})), ValidationError);
  CHECK_THROWS_AS(ChamberPoint(e(4, {1, 2}) * Rational(2)), ValidationError);
  CHECK_THROWS_AS(ChamberPoint(normalize(e(3, {1, 2}) * Rational(3) - e(3, {1, 3}))), ValidationError);
}

TEST_CASE("split of the worked example") {
  const SplitTriple s = split(ChamberPoint(worked_example()));
  CHECK(s.t == Rational(3, 5));
  REQUIRE(s.eta.has_value());
  REQUIRE(s.omega.has_value());
  CHECK(*s.eta == MultiVector::from_dense(4, 1, std::vector<Rational>{{0}, {1, 6}, {1, 3}, {1, 2}}));
  CHECK(*s.omega == (e(4, {2, 3}) + e(4, {2, 4}) * Rational(2) + e(4, {3, 4})) * Rational(1, 4));
  CHECK(assemble(s).rho() == worked_example());
  CHECK(s.t == oracle::chamber_t(worked_example()));
}

TEST_CASE("split degeneracies") {
  const SplitTriple top = split(ChamberPoint(e(3, {1, 2})));
  CHECK(top.t == Rational(1));
  CHECK(top.eta == e(3, {2}));
  CHECK_FALSE(top.omega.has_value());
  const SplitTriple bottom = split(ChamberPoint(e(3, {2, 3})));
  CHECK(bottom.t == Rational(0));
  CHECK_FALSE(bottom.eta.has_value());
  CHECK(bottom.omega == e(3, {2, 3}));
  CHECK(assemble(top).rho() == e(3, {1, 2}));
  CHECK(assemble(bottom).rho() == e(3, {2, 3}));
}

TEST_CASE("assemble rejects malformed triples") {
  SplitTriple s{4, 2, Rational(1, 2), e(4, {2}), e(4, {3, 4})};
  CHECK_THROWS_AS((void)assemble(s), ContainmentError);
  s.omega = e(4, {2, 3});
  CHECK_NOTHROW((void)assemble(s));
  s.eta.reset();
  CHECK_THROWS_AS((void)assemble(s), ValidationError);
  SplitTriple with_one{4, 2, Rational(1, 2), e(4, {2}), e(4, {1, 2})};
  CHECK_THROWS_AS((void)assemble(with_one), ValidationError);
  SplitTriple unnormalized{4, 2, Rational(1, 2), e(4, {2}) * Rational(2), e(4, {2, 3})};
  CHECK_THROWS_AS((void)assemble(unnormalized), ValidationError);
}

TEST_CASE("split and assemble are exact inverses on random points") {
  sampling::Rng rng(11);
  for (auto [k, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 5}, std::pair{1, 4}, std::pair{3, 4}}) {
    for (int i = 0; i < 60; ++i) {
      const MultiVector rho = i % 2 == 0 ? sampling::random_positive_point(rng, k, n)
                                         : sampling::random_boundary_point(rng, k, n);
      const SplitTriple s = split(ChamberPoint(rho));
      CHECK(s.t == oracle::chamber_t(rho));
      CHECK(assemble(s).rho() == rho);
      const SplitTriple again = split(assemble(s));
      CHECK(again.t == s.t);
      CHECK(again.eta == s.eta);
      CHECK(again.omega == s.omega);
    }
  }
}

TEST_CASE("t is 1-Lipschitz in the coefficient l1 distance") {
  sampling::Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const PlaneMatrix m = sampling::random_positive_plane(rng, 2, 5);
    const MultiVector rho = normalize(plucker_of_matrix(m));
    const Rational t0 = split(ChamberPoint(rho)).t;
    for (int j = 1; j <= 6; ++j) {
      const MultiVector moved = perturbed(m, Rational(1, static_cast<long>(std::pow(10, j))));
      if (!is_nonnegative(moved)) continue;
      Rational l1;
      for (const auto& x : (moved - rho).dense()) l1 += abs(x);
      CHECK(abs(split(ChamberPoint(moved)).t - t0) <= l1);
    }
  }
}

TEST_CASE("fiber polytope examples") {
  // η = e₂ in the G(2,4) setting: ω = e₂ ∧ (βe₃ + γe₄), β + γ = 1
  const auto f = f_fiber_polytope(e(4, {2}));
  CHECK(f.dim == 1);
  const auto fv = vertices(f);
  CHECK(fv.size() == 2);
  CHECK(distance(fv[0], fv[1]) > 0.1);

  // n − 1 = k: the only containing plane is the whole of span(e₂..eₙ)
  const auto point = f_fiber_polytope(e(4, {2, 3}));
  CHECK(point.dim == 0);

  const auto seg = e_fiber_polytope(e(4, {2, 3}));
  CHECK(seg.dim == 1);
  CHECK(vertices(seg).size() == 2);
  CHECK(interior_radius(seg) > 0.0);

  const DenseForm w = to_dense(drop_first_index(e(4, {2, 3})));
  const FiberFrame frame = e_fiber_frame(w);
  for (const auto& v : vertices(frame.polytope)) {
    const DenseForm eta = frame.point(v);
    CHECK(eta.sum() == doctest::Approx(1.0));
    const double lo = *std::min_element(eta.c.begin(), eta.c.end());
    CHECK(lo >= -1e-12);
  }

  CHECK_THROWS_AS((void)e_fiber_polytope(e(4, {1, 2})), ValidationError);
  CHECK_THROWS_AS((void)f_fiber_polytope(e(4, {2}) * Rational(3)), ValidationError);
}

TEST_CASE("positive bases give full-dimensional fibers") {
  sampling::Rng rng(3);
  for (auto [k, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 5}, std::pair{3, 6}}) {
    for (int i = 0; i < 10; ++i) {
      const MultiVector omega = prepend_index(sampling::random_positive_point(rng, k, n - 1));
      const auto ef = e_fiber_polytope(omega);
      CHECK(ef.dim == k - 1);
      CHECK(interior_radius(ef) > 1e-9);
      const MultiVector eta = prepend_index(sampling::random_positive_point(rng, k - 1, n - 1));
      const auto ff = f_fiber_polytope(eta);
      CHECK(ff.dim == n - k - 1);
      CHECK(interior_radius(ff) > 1e-9);
    }
  }
}

TEST_CASE("E fiber points are contained normalized nonnegative forms") {
  sampling::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const MultiVector omega =
        i % 3 == 0 ? sampling::random_boundary_point(rng, 2, 4) : sampling::random_positive_point(rng, 2, 4);
    const FiberFrame frame = e_fiber_frame(to_dense(omega));
    const auto verts = vertices(frame.polytope);
    REQUIRE_FALSE(verts.empty());
    CHECK(affine_dimension(verts) <= 1);
    for (const auto& v : verts) {
      const DenseForm eta = frame.point(v);
      CHECK(eta.sum() == doctest::Approx(1.0));
      CHECK(*std::min_element(eta.c.begin(), eta.c.end()) >= -1e-9);
      // η ⊂ ω: v ∧ ω = 0 for the vector η
      CHECK(wedge(eta.c, to_dense(omega)).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("fiber polytopes vary continuously over the interior") {
  sampling::Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    const PlaneMatrix m = sampling::random_positive_plane(rng, 2, 4);
    const auto base = vertices(e_fiber_frame(to_dense(normalize(plucker_of_matrix(m)))).polytope);
    double previous = 1e300;
    for (int j = 2; j <= 7; ++j) {
      const MultiVector moved = perturbed(m, Rational(1, static_cast<long>(std::pow(10, j))));
      const double h = hausdorff(base, vertices(e_fiber_frame(to_dense(moved)).polytope));
      CHECK(h <= previous * 1.0001 + 1e-12);
      previous = h;
    }
    CHECK(previous < 1e-5);
  }
}

TEST_CASE("dense split matches the exact split") {
  sampling::Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    const MultiVector rho = sampling::random_positive_point(rng, 2, 5);
    const SplitTriple s = split(ChamberPoint(rho));
    const DenseSplit d = split_dense(to_dense(rho));
    CHECK(d.t == doctest::Approx(s.t.to_double()).epsilon(1e-14));
    CHECK(max_diff(d.eta, to_dense(drop_first_index(*s.eta))) < 1e-14);
    CHECK(max_diff(d.omega, to_dense(drop_first_index(*s.omega))) < 1e-14);
    CHECK(max_diff(assemble_dense(5, 2, d.t, d.eta, d.omega), to_dense(rho)) < 1e-14);
  }
}

TEST_CASE("cube and ball conversions") {
  const Point c{1.0, 1.0};
  const Point b = cube_to_ball(c);
  CHECK(length(b) == doctest::Approx(1.0));
  CHECK(b[0] == doctest::Approx(std::sqrt(0.5)));
  const Point back = ball_to_cube(b);
  CHECK(back[0] == doctest::Approx(1.0));
  CHECK(back[1] == doctest::Approx(1.0));
  CHECK(cube_to_ball({0.0, 0.0}) == Point{0.0, 0.0});
}

TEST_CASE("G(1,2) chart is a monotone map onto [-1,1]") {
  const BallChart chart(1, 2);
  CHECK(chart.dim() == 1);
  double previous = -2.0;
  for (int i = 0; i <= 20; ++i) {
    const double a = i / 20.0;
    const Point y = chart.forward(DenseForm{2, 1, {a, 1.0 - a}});
    REQUIRE(y.size() == 1);
    CHECK(y[0] > previous);
    previous = y[0];
  }
  CHECK(chart.forward(DenseForm{2, 1, {0.0, 1.0}})[0] == doctest::Approx(-1.0));
  CHECK(chart.forward(DenseForm{2, 1, {1.0, 0.0}})[0] == doctest::Approx(1.0));
}

TEST_CASE("simplex charts") {
  sampling::Rng rng(31);
  for (auto [k, n] : {std::pair{1, 3}, std::pair{1, 5}, std::pair{2, 3}, std::pair{3, 4}}) {
    const BallChart chart(k, n);
    CHECK(chart.dim() == k * (n - k));
    for (int i = 0; i < 50; ++i) {
      const MultiVector rho = i % 2 == 0 ? sampling::random_positive_point(rng, k, n)
                                         : sampling::random_boundary_point(rng, k, n);
      const Point y = chart.forward(ChamberPoint(rho));
      if (i % 2 == 0) {
        CHECK(length(y) < 1.0);
      } else {
        CHECK(length(y) == doctest::Approx(1.0).epsilon(1e-12));
      }
      CHECK(max_diff(chart.inverse(y), to_dense(rho)) < 1e-12);
    }
  }
  CHECK(BallChart(0, 3).dim() == 0);
  CHECK(BallChart(3, 3).inverse({}).c == std::vector<double>{1.0});
  CHECK_THROWS_AS((void)BallChart(1, 3).inverse({1.0, 1.0}), DomainError);
}

TEST_CASE("G(2,4) chart") {
  const BallChart chart(2, 4);
  CHECK(chart.dim() == 4);
  sampling::Rng rng(37);
  std::vector<Point> images;
  std::vector<MultiVector> inputs;
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const bool positive = i % 4 != 3;
    const MultiVector rho =
        positive ? sampling::random_positive_point(rng, 2, 4) : sampling::random_boundary_point(rng, 2, 4);
    const Point y = chart.forward(ChamberPoint(rho));
    REQUIRE(y.size() == 4);
    CHECK(length(y) <= 1.0 + 1e-9);
    if (positive) CHECK(length(y) < 1.0);
    worst = std::max(worst, max_diff(chart.inverse(y), to_dense(rho)));
    images.push_back(y);
    inputs.push_back(rho);
  }
  MESSAGE("G(2,4) round-trip max error " << worst);
  CHECK(worst < 1e-6);
  double margin = 1e300;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (inputs[i] != inputs[j]) margin = std::min(margin, distance(images[i], images[j]));
    }
  }
  CHECK(margin > 0.0);
  CHECK_THROWS_AS((void)chart.inverse({1.0, 1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("G(2,4) inverse lands in the nonnegative Grassmannian") {
  const BallChart chart(2, 4);
  sampling::Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    Point b(4);
    for (auto& x : b) x = 2.0 * sampling::uniform_real(rng) - 1.0;
    const double r = std::pow(sampling::uniform_real(rng), 0.25) / length(b);
    for (auto& x : b) x *= r;
    const DenseForm rho = chart.inverse(b);
    CHECK(rho.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*std::min_element(rho.c.begin(), rho.c.end()) >= -1e-9);
    const auto& c = rho.c;  // ρ12 ρ34 − ρ13 ρ24 + ρ14 ρ23 = 0
    CHECK(std::abs(c[0] * c[5] - c[1] * c[4] + c[2] * c[3]) < 1e-9);
    CHECK(distance(chart.forward(rho), b) < 1e-6);
  }
}

TEST_CASE("deeper recursion round trips") {
  sampling::Rng rng(43);
  for (auto [k, n] : {std::pair{2, 5}, std::pair{3, 5}}) {
    const BallChart chart(k, n);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const MultiVector rho =
          i % 3 == 2 ? sampling::random_boundary_point(rng, k, n) : sampling::random_positive_point(rng, k, n);
      const Point y = chart.forward(ChamberPoint(rho));
      CHECK(static_cast<int>(y.size()) == k * (n - k));
      CHECK(length(y) <= 1.0 + 1e-9);
      worst = std::max(worst, max_diff(chart.inverse(y), to_dense(rho)));
    }
    MESSAGE("G(" << k << "," << n << ") round-trip max error " << worst);
    CHECK(worst < 1e-6);
  }
}
