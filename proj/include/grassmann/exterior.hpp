#pragma once

// Exact exterior algebra on Λ^k(ℝⁿ) in the standard orthonormal basis
// e_1, …, e_n. Indices are 1-based throughout, matching the usual notation
// e_A = e_{a_1} ∧ ⋯ ∧ e_{a_k} with a_1 < ⋯ < a_k.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grassmann/rational.hpp"

namespace grassmann {

/// Strictly increasing list of 1-based indices. Ordered lexicographically,
/// which for sets of equal size is the basis order used everywhere.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> elements);
  IndexSet(std::initializer_list<int> elements) : IndexSet(std::vector<int>(elements)) {}

  /// Parses the comma-joined form "1,3,4"; the empty string is the empty set.
  static IndexSet parse(std::string_view text);

  [[nodiscard]] const std::vector<int>& elements() const { return elements_; }
  [[nodiscard]] int size() const { return static_cast<int>(elements_.size()); }
  [[nodiscard]] bool empty() const { return elements_.empty(); }
  [[nodiscard]] bool contains(int index) const;
  [[nodiscard]] int max_element() const { return elements_.empty() ? 0 : elements_.back(); }
  [[nodiscard]] std::string str() const;

  /// Complement in {1..n}.
  [[nodiscard]] IndexSet complement(int n) const;
  [[nodiscard]] IndexSet without(int index) const;
  [[nodiscard]] IndexSet with(int index) const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> elements_;
};

/// All k-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> k_subsets(int n, int k);

/// Sign (+1/−1) of the permutation sorting the concatenation A·B, or 0 if
/// A and B intersect.
int shuffle_sign(const IndexSet& a, const IndexSet& b);

enum class SignClass { Zero, Positive, Nonnegative, Mixed };

std::string to_string(SignClass sign);

/// Element of Λ^k(ℝⁿ). Stores only nonzero coefficients.
class MultiVector {
 public:
  using Coefficients = std::map<IndexSet, Rational>;

  MultiVector(int n, int grade);
  MultiVector(int n, int grade, const Coefficients& coefficients);

  /// e_A in Λ^{|A|}(ℝⁿ).
  static MultiVector basis(int n, const IndexSet& a);
  static MultiVector scalar(int n, const Rational& value);
  /// Grade-1 element with the given components.
  static MultiVector vector(std::span<const Rational> components);
  /// Coefficients listed in lexicographic basis order (C(n,k) entries).
  static MultiVector from_dense(int n, int grade, std::span<const Rational> coefficients);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int grade() const { return grade_; }
  [[nodiscard]] const Coefficients& coefficients() const { return coeffs_; }
  [[nodiscard]] Rational coefficient(const IndexSet& a) const;
  [[nodiscard]] std::vector<Rational> dense() const;
  [[nodiscard]] std::vector<double> dense_double() const;
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] Rational coefficient_sum() const;
  [[nodiscard]] std::size_t support_size() const { return coeffs_.size(); }

  MultiVector& operator+=(const MultiVector& rhs);
  MultiVector& operator-=(const MultiVector& rhs);
  MultiVector& operator*=(const Rational& factor);

  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(MultiVector a, const Rational& s) { return a *= s; }
  friend MultiVector operator*(const Rational& s, MultiVector a) { return a *= s; }
  friend MultiVector operator-(MultiVector a) { return a *= Rational(-1); }
  friend bool operator==(const MultiVector&, const MultiVector&) = default;

 private:
  void check_compatible(const MultiVector& rhs) const;
  void add_term(const IndexSet& a, const Rational& value);

  int n_;
  int grade_;
  Coefficients coeffs_;

  friend MultiVector wedge(const MultiVector&, const MultiVector&);
  friend MultiVector contract(const MultiVector&, const MultiVector&);
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);

/// Interior product ι_v ω, the adjoint of v ∧ · under the induced inner product.
MultiVector contract(const MultiVector& omega, const MultiVector& v);

/// Iterated contraction by e_{b_1}, then e_{b_2}, … for B = {b_1 < b_2 < …}.
MultiVector contract_basis(const MultiVector& omega, const IndexSet& b);

/// Induced inner product; the e_A are orthonormal.
Rational inner_product(const MultiVector& a, const MultiVector& b);

/// ω / Σ_A ω_A. Throws NormalizationError when the sum is zero.
MultiVector normalize(const MultiVector& omega);
bool is_normalized(const MultiVector& omega);

SignClass classify_sign(const MultiVector& omega);
inline bool is_nonnegative(const MultiVector& omega) {
  const auto s = classify_sign(omega);
  return s == SignClass::Positive || s == SignClass::Nonnegative;
}

/// Σ_A ω_A e_{A∁}.
MultiVector complement(const MultiVector& omega);

/// Q(ω, η) defined by ω ∧ η∁ = Q(ω, η) e_{1…n}.
Rational q_form(const MultiVector& omega, const MultiVector& eta);

/// Drops index 1 from an element supported on indices 2..n, relabelling
/// i ↦ i − 1. Throws DomainError if some support set contains 1.
MultiVector drop_first_index(const MultiVector& omega);
/// Inverse of drop_first_index: relabels i ↦ i + 1 in ambient n + 1.
MultiVector prepend_index(const MultiVector& omega);

std::string to_string(const MultiVector& omega);

}  // namespace grassmann
