#include "doctest.h"

#include "grassmann/errors.hpp"
#include "grassmann/lemmas.hpp"
#include "grassmann/plucker.hpp"
#include "grassmann/sampling.hpp"

using namespace grassmann;

namespace {

MultiVector e(int n, std::initializer_list<int> idx) { return MultiVector::basis(n, IndexSet(idx)); }

MultiVector vandermonde_point() {
  const std::vector<Rational> c{{1, 10}, {2, 10}, {3, 10}, {1, 10}, {2, 10}, {1, 10}};
  return MultiVector::from_dense(4, 2, c);
}

Row<Rational> row(std::initializer_list<long> xs) {
  Row<Rational> r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

void check_shrink(const MultiVector& omega, const MultiVector& eta, SignClass expected) {
  CHECK(eta.grade() == omega.grade() - 1);
  CHECK(classify_sign(eta) == expected);
  CHECK(is_normalized(eta));
  if (eta.grade() >= 1) CHECK(contains(eta, omega));
}

void check_extend(const MultiVector& omega, const MultiVector& eta, SignClass expected) {
  CHECK(eta.grade() == omega.grade() + 1);
  CHECK(classify_sign(eta) == expected);
  CHECK(contains(omega, eta));
}

}  // namespace

TEST_CASE("shrink_nonneg examples") {
  CHECK(shrink_nonneg(e(4, {1, 2})) == e(4, {2}));
  CHECK(shrink_nonneg(e(4, {2, 3})) == e(4, {3}));
  const std::vector<Rational> expected{0, {1, 6}, {1, 3}, {1, 2}};
  CHECK(shrink_nonneg(vandermonde_point()) == MultiVector::from_dense(4, 1, expected));
}

TEST_CASE("shrink input validation") {
  CHECK_THROWS_AS(shrink_nonneg(e(4, {1, 2}) - e(4, {1, 3}) * Rational(2)), ValidationError);
  CHECK_THROWS_AS(shrink_nonneg(e(4, {1, 2}) * Rational(2)), ValidationError);
  const MultiVector nondecomposable = (e(4, {1, 2}) + e(4, {3, 4})) * Rational(1, 2);
  CHECK_THROWS_AS(shrink_nonneg(nondecomposable), ValidationError);
  CHECK_THROWS_AS(shrink_positive(e(4, {1, 2})), ValidationError);
  EpsilonSearch bad;
  bad.shrink_factor = Rational(1);
  CHECK_THROWS_AS(shrink_positive(vandermonde_point(), bad), ValidationError);
}

TEST_CASE("shrink_positive candidate family") {
  const Matrix<Rational> factors{row({1, 1, 1, 1}), row({0, 1, 2, 3})};
  const MultiVector c = shrink_candidate(4, factors, Rational(1, 2));
  const std::vector<Rational> expected{{1, 2}, {3, 2}, {5, 2}, {7, 2}};
  CHECK(c == MultiVector::from_dense(4, 1, expected));
  CHECK(classify_sign(c) == SignClass::Positive);
}

TEST_CASE("shrink_positive examples") {
  EpsilonLog log;
  const MultiVector eta = shrink_positive(vandermonde_point(), {}, true, &log);
  check_shrink(vandermonde_point(), eta, SignClass::Positive);
  REQUIRE(log.size() == 1);
  CHECK(log[0].epsilon <= Rational(1, 2));

  const MultiVector top = e(3, {1, 2, 3});
  check_shrink(top, shrink_positive(top), SignClass::Positive);
  CHECK(shrink_positive(normalize(e(2, {1}) + e(2, {2}))) == MultiVector::scalar(2, Rational(1)));
}

TEST_CASE("shrink_positive is deterministic") {
  sampling::Rng rng(21);
  const MultiVector w = sampling::random_positive_point(rng, 3, 6);
  EpsilonLog a;
  EpsilonLog b;
  CHECK(shrink_positive(w, {}, true, &a) == shrink_positive(w, {}, true, &b));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].epsilon == b[i].epsilon);
}

TEST_CASE("shrink on random nonnegative and positive points") {
  sampling::Rng rng(22);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(sampling::uniform_int(rng, 3, 6));
    const int k = static_cast<int>(sampling::uniform_int(rng, 2, n - 1));
    const MultiVector p = sampling::random_positive_point(rng, k, n);
    EpsilonLog log;
    check_shrink(p, shrink_positive(p, {}, true, &log), SignClass::Positive);
    for (const auto& r : log) CHECK(r.iterations <= 20);
    const MultiVector b = sampling::random_boundary_point(rng, k, n);
    const MultiVector eta = shrink_nonneg(b);
    CHECK(is_nonnegative(eta));
    CHECK(contains(eta, b));
  }
}

TEST_CASE("shrink chains down to a line") {
  sampling::Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    MultiVector w = sampling::random_positive_point(rng, 4, 6);
    while (w.grade() > 1) {
      const MultiVector next = shrink_positive(w);
      check_shrink(w, next, SignClass::Positive);
      w = next;
    }
  }
}

TEST_CASE("extend_nonneg examples") {
  CHECK(extend_nonneg(e(3, {1, 2})) == e(3, {1, 2, 3}));
  CHECK(extend_nonneg(e(3, {1, 3})) == e(3, {1, 2, 3}));
  CHECK(extend_nonneg(e(3, {2, 3})) == e(3, {1, 2, 3}));
  CHECK_THROWS_AS(extend_nonneg(e(3, {1, 2, 3})), GradeError);
}

TEST_CASE("extend_positive examples") {
  CHECK(extend_positive(normalize(e(2, {1}) + e(2, {2}))) == e(2, {1, 2}));
  check_extend(vandermonde_point(), extend_positive(vandermonde_point()), SignClass::Positive);
}

TEST_CASE("extend on random points") {
  sampling::Rng rng(24);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(sampling::uniform_int(rng, 3, 6));
    const int k = static_cast<int>(sampling::uniform_int(rng, 1, n - 2));
    const MultiVector p = sampling::random_positive_point(rng, k, n);
    EpsilonLog log;
    const MultiVector up = extend_positive(p, {}, true, &log);
    check_extend(p, up, SignClass::Positive);
    CHECK(is_normalized(up));
    for (const auto& r : log) CHECK(r.iterations <= 20);
    const MultiVector b = sampling::random_boundary_point(rng, k, n);
    const MultiVector eta = extend_nonneg(b);
    CHECK(is_nonnegative(eta));
    CHECK(contains(b, eta));
  }
}

TEST_CASE("extend chains up to the top grade") {
  sampling::Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    MultiVector w = sampling::random_positive_point(rng, 1, 6);
    while (w.grade() < w.n()) {
      const MultiVector next = extend_positive(w);
      check_extend(w, next, SignClass::Positive);
      w = next;
    }
  }
}

TEST_CASE("shrink on the Q-dual side gives a positive extension") {
  sampling::Rng rng(26);
  int same = 0;
  int total = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(sampling::uniform_int(rng, 4, 6));
    const int k = static_cast<int>(sampling::uniform_int(rng, 1, n - 2));
    const MultiVector p = sampling::random_positive_point(rng, k, n);
    MultiVector dual = q_orthocomplement(p);
    if (classify_sign(dual) != SignClass::Positive) dual = -dual;
    REQUIRE(classify_sign(dual) == SignClass::Positive);
    const MultiVector dual_shrunk = shrink_positive(normalize(dual));
    MultiVector up = q_orthocomplement(dual_shrunk);
    if (classify_sign(up) != SignClass::Positive) up = -up;
    check_extend(p, up, SignClass::Positive);
    ++total;
    if (same_plane(up, extend_positive(p))) ++same;
  }
  MESSAGE("dual-side extension equals direct extension: " << same << "/" << total);
}
