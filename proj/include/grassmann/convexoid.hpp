#pragma once

// Convexoids: bodies fibered over the cube Q = [0,1]×[−1,1]^{n_b−1} by convex
// polytopes, mapped homeomorphically onto a closed half-ball with the
// bottom {0}×[−1,1]^{n_b−1} going to the flat face, and pairs of them glued
// along their bottoms into a ball.
//
// Points are (base, fiber) concatenated: the first n_b coordinates are the
// base point p ∈ Q, the remaining m the fiber point y ∈ E(p).

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "grassmann/polytope.hpp"

namespace grassmann {

using Point = std::vector<double>;
using FiberOracle = std::function<HPolytope<double>(const Point& base)>;

struct ConvexoidSpec {
  int base_dim = 1;
  int fiber_dim = 1;
  FiberOracle fiber;

  void validate() const;
};

struct ConvexoidTolerances {
  double membership = 1e-7;  // slack for p ∈ Q and y ∈ E(p)
  double exit = 1e-10;       // absolute bisection tolerance on exit times
  double boundary = 1e-12;   // base gauge within this of 1 counts as the distinguished boundary
  int scan_levels = 20;      // the doubling scan starts at U·2^{−scan_levels}
};

/// max(p₀, |p₁|, …): the gauge of Q about its bottom center.
double base_gauge(const Point& p);
bool in_base_cube(const Point& p, double tol = 0.0);

struct RadialProjection {
  Point point;  // on the distinguished boundary
  double s;     // p = s·point
};

/// Point of ∂Q ∖ open bottom on the ray from the origin through p.
/// Throws DomainError at the origin.
RadialProjection radial_project_base(const Point& p);

struct CenteredFiber {
  HPolytope<double> polytope;          // E(p) − b(p)
  Point barycenter;                    // b(p); the relative barycenter for degenerate fibers
  std::vector<Row<double>> vertices;   // of the centered polytope
};

CenteredFiber centered_fiber(const ConvexoidSpec& spec, const Point& p);

/// Same convexoid with every fiber translated to barycenter 0.
ConvexoidSpec center_fibers(const ConvexoidSpec& spec);

/// E′(p) = (1−s)E(0) ⊕ sE(P(p)) for a centered spec, as an H-representation.
HPolytope<double> join_fiber(const ConvexoidSpec& centered, const Point& p);

struct ExitTime {
  Point direction;  // unit vector in base × fiber space
  double T = 0.0;
};

/// Exit time of the ray t·v from the join body of a centered spec.
ExitTime exit_time(const ConvexoidSpec& centered, const Point& v, const ConvexoidTolerances& tol = {});

class Convexoid {
 public:
  explicit Convexoid(ConvexoidSpec spec, ConvexoidTolerances tol = {});

  [[nodiscard]] int base_dim() const { return spec_.base_dim; }
  [[nodiscard]] int fiber_dim() const { return spec_.fiber_dim; }
  [[nodiscard]] int dim() const { return spec_.base_dim + spec_.fiber_dim; }
  [[nodiscard]] const ConvexoidSpec& spec() const { return spec_; }
  [[nodiscard]] const ConvexoidTolerances& tolerances() const { return tol_; }

  [[nodiscard]] bool contains(const Point& x) const;
  /// Throws DomainError when x ∉ E.
  [[nodiscard]] Point to_half_ball(const Point& x) const;
  /// Throws DomainError outside the closed half-ball.
  [[nodiscard]] Point from_half_ball(const Point& h) const;
  [[nodiscard]] ExitTime exit_time(const Point& v) const;
  /// E′(p) for the centered fibers.
  [[nodiscard]] HPolytope<double> join_fiber(const Point& p) const;

 private:
  struct Ray;
  [[nodiscard]] Ray ray(const Point& q) const;
  [[nodiscard]] double exit_along(const Point& v, const Ray* r) const;
  // Ratio r_{E′(p)}(u) / r_{E(p)}(u) of radial functions, 1 where the
  // rescale is the identity.
  [[nodiscard]] double rescale_factor(const Point& p, const CenteredFiber& fiber, const Ray* r,
                                      const Point& y) const;

  ConvexoidSpec spec_;
  ConvexoidTolerances tol_;
  CenteredFiber origin_;
};

/// Half-ball {|h| ≤ 1, h₀ ≥ 0} → cylinder [0,1]×B^{l−1}, radially; the
/// identity on the flat face.
Point half_ball_to_cylinder(const Point& h);
Point cylinder_to_half_ball(const Point& c);
/// Cylinder [−1,1]×B^{l−1} → ball B^l, radially.
Point cylinder_to_ball(const Point& q);
Point ball_to_cylinder(const Point& b);

/// Identification of the E bottom with the F bottom, in convexoid coordinates.
struct BottomMap {
  std::function<Point(const Point&)> forward;  // EB → FB
  std::function<Point(const Point&)> inverse;  // FB → EB
};

enum class Side { E, F };

struct GlueOptions {
  int validation_samples = 16;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
};

/// Ball map of E ∪ F glued along φ. E occupies the cylinder half q₀ ≤ 0,
/// F the half q₀ ≥ 0; F's slices are twisted by ψ = b_E ∘ φ⁻¹ ∘ b_F⁻¹ so
/// that bottom points and their φ-images land on the same ball point.
class GluedBall {
 public:
  GluedBall(std::shared_ptr<const Convexoid> e, std::shared_ptr<const Convexoid> f, BottomMap phi);

  [[nodiscard]] int dim() const { return e_->dim(); }
  [[nodiscard]] Point map(Side side, const Point& x) const;
  [[nodiscard]] std::pair<Side, Point> inverse(const Point& b) const;
  /// ψ on the bottom ball B^{l−1} and its inverse.
  [[nodiscard]] Point twist(const Point& c) const;
  [[nodiscard]] Point untwist(const Point& c) const;

  [[nodiscard]] const Convexoid& e() const { return *e_; }
  [[nodiscard]] const Convexoid& f() const { return *f_; }
  [[nodiscard]] const BottomMap& phi() const { return phi_; }

 private:
  std::shared_ptr<const Convexoid> e_;
  std::shared_ptr<const Convexoid> f_;
  BottomMap phi_;
};

/// Builds the glued map after checking φ on sampled bottom points of E:
/// φ(x) must lie on the bottom of F and φ⁻¹(φ(x)) must return x.
/// Throws GluingError on mismatch beyond the tolerance.
GluedBall glue(std::shared_ptr<const Convexoid> e, std::shared_ptr<const Convexoid> f, BottomMap phi,
               const GlueOptions& options = {});

}  // namespace grassmann
