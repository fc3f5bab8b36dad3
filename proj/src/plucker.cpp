#include "grassmann/plucker.hpp"

#include "grassmann/errors.hpp"

namespace grassmann {

PlaneMatrix::PlaneMatrix(int n, Matrix<Rational> rows) : n_(n), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (static_cast<int>(r.size()) != n_) throw DimensionError("plane matrix rows must have length n");
  }
  if (static_cast<int>(rows_.size()) > n_) throw RankError("more rows than the ambient dimension");
  if (rank(rows_) != static_cast<int>(rows_.size())) throw RankError("plane matrix rows are linearly dependent");
}

MultiVector plucker_of_rows(int n, const Matrix<Rational>& rows) {
  const int k = static_cast<int>(rows.size());
  if (k > n) throw RankError("more rows than the ambient dimension");
  MultiVector::Coefficients c;
  for (const auto& a : k_subsets(n, k)) {
    Matrix<Rational> minor(static_cast<std::size_t>(k), Row<Rational>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        minor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(a.elements()[static_cast<std::size_t>(j)] - 1)];
      }
    }
    c.emplace(a, determinant(std::move(minor)));
  }
  MultiVector out(n, k, c);
  if (out.is_zero()) throw RankError("rows are linearly dependent");
  return out;
}

MultiVector plucker_of_matrix(const PlaneMatrix& m) { return plucker_of_rows(m.n(), m.rows()); }

bool is_decomposable(const MultiVector& omega) {
  if (omega.is_zero()) throw DomainError("decomposability of the zero element is undefined");
  const int k = omega.grade();
  if (k <= 1 || k >= omega.n() - 1) return true;
  for (const auto& b : k_subsets(omega.n(), k - 1)) {
    const MultiVector v = contract_basis(omega, b);
    if (v.is_zero()) continue;
    if (!wedge(v, omega).is_zero()) return false;
  }
  return true;
}

namespace {

// Rows ι_{e_B} ω for all (k−1)-subsets B; for decomposable ω they span its plane.
Matrix<Rational> contraction_rows(const MultiVector& omega) {
  Matrix<Rational> rows;
  const int n = omega.n();
  for (const auto& b : k_subsets(n, omega.grade() - 1)) {
    const MultiVector v = contract_basis(omega, b);
    if (v.is_zero()) continue;
    Row<Rational> r(static_cast<std::size_t>(n), Rational(0));
    for (const auto& [a, value] : v.coefficients()) r[static_cast<std::size_t>(a.elements()[0] - 1)] = value;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

PlaneMatrix spanning_vectors(const MultiVector& omega) {
  if (omega.is_zero()) throw DecomposabilityError("the zero element has no plane");
  if (!is_decomposable(omega)) throw DecomposabilityError("element is not decomposable: " + to_string(omega));
  if (omega.grade() == 0) return PlaneMatrix(omega.n(), {});
  auto ef = rref(contraction_rows(omega));
  if (static_cast<int>(ef.rows.size()) != omega.grade()) {
    throw DecomposabilityError("contractions do not span a plane of the expected dimension");
  }
  return PlaneMatrix(omega.n(), std::move(ef.rows));
}

bool contains(const MultiVector& eta, const MultiVector& omega) {
  if (eta.n() != omega.n()) throw DimensionError("containment across different ambient dimensions");
  if (eta.grade() > omega.grade()) return false;
  const PlaneMatrix small = spanning_vectors(eta);
  const PlaneMatrix big = spanning_vectors(omega);
  Matrix<Rational> stacked = big.rows();
  stacked.insert(stacked.end(), small.rows().begin(), small.rows().end());
  return rank(stacked) == omega.grade();
}

bool same_plane(const MultiVector& a, const MultiVector& b) {
  return a.grade() == b.grade() && contains(a, b);
}

MultiVector canonical_representative(const MultiVector& omega) {
  if (omega.is_zero()) throw DomainError("the zero element has no representative");
  const Rational sum = omega.coefficient_sum();
  if (!sum.is_zero()) return omega * (Rational(1) / sum);
  return omega * (Rational(1) / omega.coefficients().begin()->second);
}

MultiVector q_orthocomplement(const MultiVector& omega) {
  const int n = omega.n();
  if (omega.grade() >= n) throw GradeError("the Q-complement of the full space is the zero plane");
  const PlaneMatrix basis = spanning_vectors(omega);
  // x ⟂_Q v  ⟺  Σ_i (−1)^{i−1} v_i x_i = 0, so the complement is the null
  // space of the rows with every even-indexed column negated.
  Matrix<Rational> twisted = basis.rows();
  for (auto& r : twisted) {
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  }
  Matrix<Rational> complement_rows = null_space(twisted, static_cast<std::size_t>(n));
  return canonical_representative(plucker_of_rows(n, complement_rows));
}

}  // namespace grassmann
