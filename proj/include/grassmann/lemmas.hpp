#pragma once

// Constructive containment lemmas: given a nonnegative (or positive)
// normalized decomposable k-vector ω, build a (k−1)-vector η ⊂ ω or a
// (k+1)-vector η ⊃ ω with the same sign property.

#include <vector>

#include "grassmann/exterior.hpp"
#include "grassmann/linalg.hpp"

namespace grassmann {

/// Geometric search policy for the perturbation parameter ε: tries
/// initial, initial·shrink_factor, … until the candidate is positive.
struct EpsilonSearch {
  Rational initial{1, 2};
  Rational shrink_factor{1, 2};
  int max_iterations = 64;

  void validate() const;
};

/// One completed ε search: the accepted value and how many candidates were tried.
struct EpsilonRecord {
  int grade = 0;
  int n = 0;
  Rational epsilon;
  int iterations = 0;
};

using EpsilonLog = std::vector<EpsilonRecord>;

/// Nonnegative nonzero η of grade k−1 with η ⊂ ω (normalized).
MultiVector shrink_nonneg(const MultiVector& omega, bool validate = true);

/// Positive η of grade k−1 with η ⊂ ω (normalized). For k = 1 returns the
/// grade-0 scalar 1.
MultiVector shrink_positive(const MultiVector& omega, const EpsilonSearch& cfg = {}, bool validate = true,
                            EpsilonLog* log = nullptr);

/// η = (−1)^{j−1} e_j ∧ ω where j is the least index omitted by some support set.
MultiVector extend_nonneg(const MultiVector& omega, bool validate = true);

/// Positive η of grade k+1 with ω ⊂ η (normalized).
MultiVector extend_positive(const MultiVector& omega, const EpsilonSearch& cfg = {}, bool validate = true,
                            EpsilonLog* log = nullptr);

/// The ε-family used by shrink_positive, from an explicit factorization
/// ω = f₀ ∧ f₁ ∧ ⋯ ∧ f_{k−1} where f₀ = e₁ + v₁, f₁ ∧ ⋯ ∧ f_{k−1} = w₂ ∧ ⋯ ∧ w_k
/// and w₃ ∧ ⋯ ∧ w_k is positive:
///   k = 2:  ε f₀ + f₁
///   k ≥ 3:  (ε f₁ + f₂) ∧ (−ε² f₀ + f₂) ∧ f₃ ∧ ⋯ ∧ f_{k−1}
/// Not normalized.
MultiVector shrink_candidate(int n, const Matrix<Rational>& factors, const Rational& epsilon);

}  // namespace grassmann
