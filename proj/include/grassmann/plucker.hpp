#pragma once

// k-planes as spanning matrices and as decomposable k-vectors.

#include <vector>

#include "grassmann/exterior.hpp"
#include "grassmann/linalg.hpp"

namespace grassmann {

/// k×n rational matrix whose rows span a k-plane. Row rank is exactly k.
class PlaneMatrix {
 public:
  /// Throws RankError if the rows are linearly dependent, DimensionError if
  /// they have different lengths.
  PlaneMatrix(int n, Matrix<Rational> rows);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int k() const { return static_cast<int>(rows_.size()); }
  [[nodiscard]] const Matrix<Rational>& rows() const { return rows_; }
  [[nodiscard]] const Row<Rational>& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const PlaneMatrix&, const PlaneMatrix&) = default;

 private:
  int n_;
  Matrix<Rational> rows_;
};

/// Maximal minors of the rows: coefficient on e_A is the minor on columns A.
MultiVector plucker_of_matrix(const PlaneMatrix& m);

/// Same as plucker_of_matrix for a raw row list; throws RankError when the
/// rows are dependent.
MultiVector plucker_of_rows(int n, const Matrix<Rational>& rows);

/// Exact decomposability test: ι_{e_B} ω ∧ ω = 0 for every (k−1)-subset B.
/// Throws DomainError on the zero element.
bool is_decomposable(const MultiVector& omega);

/// Reduced row echelon basis of the plane of a decomposable ω.
/// Throws DecomposabilityError for non-decomposable input.
PlaneMatrix spanning_vectors(const MultiVector& omega);

/// True iff the plane of η is a subspace of the plane of ω.
bool contains(const MultiVector& eta, const MultiVector& omega);

/// True iff a and b represent the same plane.
bool same_plane(const MultiVector& a, const MultiVector& b);

/// Representative of the plane of ω: normalized when the coefficient sum is
/// nonzero, otherwise scaled so the first nonzero coefficient is +1.
MultiVector canonical_representative(const MultiVector& omega);

/// The Q-orthogonal complement of the plane of ω, where on ℝⁿ
/// Q(x, y) = Σ_i (−1)^{i−1} x_i y_i. Returned as a canonical representative.
MultiVector q_orthocomplement(const MultiVector& omega);

}  // namespace grassmann
