#pragma once

// The nonnegative Grassmannian G(k,n)≥0 through the decomposition
// ρ = t·e₁∧η + (1−t)·ω, its fiber polytopes, and a recursive homeomorphism
// onto the closed ball of dimension k(n−k).

#include <memory>
#include <optional>
#include <vector>

#include "grassmann/convexoid.hpp"
#include "grassmann/exterior.hpp"
#include "grassmann/numeric.hpp"
#include "grassmann/polytope.hpp"

namespace grassmann {

/// A normalized, nonnegative, decomposable k-vector. The constructor
/// validates and throws ValidationError otherwise.
class ChamberPoint {
 public:
  explicit ChamberPoint(MultiVector rho);

  [[nodiscard]] const MultiVector& rho() const { return rho_; }
  [[nodiscard]] int n() const { return rho_.n(); }
  [[nodiscard]] int k() const { return rho_.grade(); }

 private:
  MultiVector rho_;
};

/// ρ = t·e₁∧η + (1−t)·ω with η (grade k−1) and ω (grade k) supported on
/// indices 2..n of the same ambient space. η is absent iff t = 0 and ω is
/// absent iff t = 1.
struct SplitTriple {
  int n = 0;
  int k = 0;
  Rational t;
  std::optional<MultiVector> eta;
  std::optional<MultiVector> omega;
};

SplitTriple split(const ChamberPoint& p);
/// Inverse of split. Throws ContainmentError when 0 < t < 1 and η ⊄ ω, and
/// ValidationError for malformed components.
ChamberPoint assemble(const SplitTriple& s);

/// Double-precision split of a dense ρ, in the coordinates of ℝ^{n−1} = span(e₂..e_n).
struct DenseSplit {
  double t = 0.0;
  DenseForm eta;    // grade k−1 on ℝ^{n−1}; zero when t = 0
  DenseForm omega;  // grade k on ℝ^{n−1}; zero when t = 1
};

DenseSplit split_dense(const DenseForm& rho);
DenseForm assemble_dense(int n, int k, double t, const DenseForm& eta, const DenseForm& omega);

/// Affine chart of one fiber: a linear map c ↦ L c from ℝ^r into k-vectors,
/// the normalization hyperplane 1ᵀL c = 1 parametrized as c = c₀ + Z z, and
/// the nonnegativity polytope in z.
struct FiberFrame {
  int n = 0;      // ambient dimension of the output forms
  int grade = 0;  // grade of the output forms
  Matrix<double> lift;  // C(n, grade) × r
  Row<double> origin;   // c₀
  Matrix<double> basis; // Z as r rows of length dim
  HPolytope<double> polytope;

  [[nodiscard]] int dim() const { return polytope.dim; }
  /// z with point(z) closest to target.
  [[nodiscard]] Row<double> coordinates(const DenseForm& target) const;
  [[nodiscard]] DenseForm point(const Row<double>& z) const;
};

/// Frame of {η ⊂ ω : η nonnegative, normalized}, dimension k−1, for a
/// decomposable ω on ℝ^{n'}.
FiberFrame e_fiber_frame(const DenseForm& omega);
/// Frame of {ω ⊃ η : ω nonnegative, normalized}, dimension n'−k−1 where
/// k = grade(η)+1, for a decomposable η on ℝ^{n'}.
FiberFrame f_fiber_frame(const DenseForm& eta);

/// Fiber polytopes for components supported on indices 2..n, as produced by split.
HPolytope<double> e_fiber_polytope(const MultiVector& omega);
HPolytope<double> f_fiber_polytope(const MultiVector& eta);

/// Sup-norm cube ↔ Euclidean ball, radially; the identity at 0.
Point ball_to_cube(const Point& y);
Point cube_to_ball(const Point& c);

/// Homeomorphism G(k,n)≥0 → closed ball of dimension k(n−k). Simplices
/// (k = 1 or k = n−1) use a fixed radial map; otherwise the E piece
/// (t ≤ 1/2, over G(k,n−1)≥0) and the F piece (t ≥ 1/2, over G(k−1,n−1)≥0)
/// are convexoids glued along t = 1/2.
class BallChart {
 public:
  BallChart(int k, int n);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int dim() const { return k_ * (n_ - k_); }

  [[nodiscard]] Point forward(const ChamberPoint& p) const;
  [[nodiscard]] Point forward(const DenseForm& rho) const;
  /// Forces the E or F route; ρ must lie in that piece (t ≤ 1/2 or t ≥ 1/2).
  [[nodiscard]] Point forward(const DenseForm& rho, Side side) const;
  /// Coefficients of the (approximately) normalized nonnegative ρ.
  /// Throws DomainError outside the closed unit ball.
  [[nodiscard]] DenseForm inverse(const Point& c) const;

  /// Convexoid coordinates of ρ in the E or F piece.
  [[nodiscard]] Point piece_coordinates(const DenseSplit& s, Side side) const;
  [[nodiscard]] const GluedBall* glued() const { return glued_.get(); }

 private:
  [[nodiscard]] Point simplex_forward(const DenseForm& rho) const;
  [[nodiscard]] DenseForm simplex_inverse(const Point& y) const;
  [[nodiscard]] DenseForm piece_point(const Point& x, Side side) const;

  int k_;
  int n_;
  std::shared_ptr<const BallChart> base_e_;
  std::shared_ptr<const BallChart> base_f_;
  std::unique_ptr<GluedBall> glued_;
};

Point ball_chart(const ChamberPoint& p);
DenseForm ball_chart_inverse(const Point& c, int k, int n);

}  // namespace grassmann
