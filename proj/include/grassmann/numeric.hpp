#pragma once

// Floating-point k-vectors as dense coefficient arrays in lexicographic basis
// order, with the few operations the chart needs: wedge and contraction by a
// vector, plane projectors, and deterministic orthonormal frames.

#include <cstddef>
#include <vector>

#include "grassmann/exterior.hpp"
#include "grassmann/linalg.hpp"

namespace grassmann {

struct DenseForm {
  int n = 0;
  int k = 0;
  std::vector<double> c;  // C(n, k) coefficients, lexicographic order

  [[nodiscard]] double sum() const;
  [[nodiscard]] double max_abs() const;
};

std::size_t binomial(int n, int k);
/// Position of the subset (1-based, increasing) in lexicographic order.
std::size_t subset_rank(int n, const std::vector<int>& elements);

DenseForm to_dense(const MultiVector& omega);
DenseForm zero_form(int n, int k);

/// v ∧ ω
DenseForm wedge(const Row<double>& v, const DenseForm& omega);
/// ι_v ω
DenseForm contract(const DenseForm& omega, const Row<double>& v);

/// Orthogonal projector onto the plane of a decomposable ω:
/// Σ_B (ι_{e_B}ω)(ι_{e_B}ω)ᵀ / |ω|² over (k−1)-subsets B.
Matrix<double> plane_projector(const DenseForm& omega);

/// Orthonormal basis of the range of a projector of known rank, by
/// Gram–Schmidt over its columns in index order; columns whose residual is
/// below `accept` are skipped on the first pass. Returned as rows.
Matrix<double> orthonormal_range(const Matrix<double>& projector, int rank, double accept = 1e-9);

/// Orthonormal basis (as rows) of the hyperplane g⊥ ⊂ ℝ^r, the image of
/// e_1..e_{r−1} under the rotation in span(e_r, g) taking e_r to g/|g|.
/// Continuous in g away from the ray through −e_r (everywhere when r = 2).
Matrix<double> hyperplane_basis(const Row<double>& g);

/// Least-squares solution of a·x ≈ b through the normal equations.
Row<double> least_squares(const Matrix<double>& a, const Row<double>& b);

}  // namespace grassmann
