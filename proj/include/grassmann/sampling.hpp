#pragma once

// Seeded generators for random planes and multivectors. Used by the CLI
// sweeps and by the test suites.

#include <cstdint>
#include <random>

#include "grassmann/exterior.hpp"
#include "grassmann/plucker.hpp"

namespace grassmann::sampling {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi], independent of the standard library's
/// distribution implementation so sweeps reproduce across toolchains.
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);
double uniform_real(Rng& rng);  // [0, 1)

/// p/q with p ∈ [lo, hi] and q ∈ [1, max_den].
Rational random_rational(Rng& rng, std::int64_t lo, std::int64_t hi, std::int64_t max_den);

/// Full-rank k×n matrix with small rational entries of either sign.
PlaneMatrix random_plane(Rng& rng, int k, int n);

/// Plane whose maximal minors are all strictly positive: a Vandermonde
/// block on increasing nodes, multiplied on the right by a product of
/// random elementary totally positive factors and a positive diagonal.
PlaneMatrix random_positive_plane(Rng& rng, int k, int n);

/// Plane whose maximal minors are all ≥ 0 and which has at least one zero
/// minor: a coordinate or column-restricted positive plane pushed through a
/// few elementary totally nonnegative factors, rejected if it became positive.
PlaneMatrix random_boundary_plane(Rng& rng, int k, int n);

/// Normalized nonnegative Plücker vector of a random positive plane.
MultiVector random_positive_point(Rng& rng, int k, int n);
/// Normalized nonnegative Plücker vector with at least one zero coefficient.
MultiVector random_boundary_point(Rng& rng, int k, int n);

/// Random element of Λ^k(ℝⁿ) with small rational coefficients (generally
/// not decomposable).
MultiVector random_multivector(Rng& rng, int k, int n, double density = 1.0);

}  // namespace grassmann::sampling
