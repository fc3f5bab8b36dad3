#include "grassmann/lemmas.hpp"

#include "grassmann/errors.hpp"
#include "grassmann/plucker.hpp"

namespace grassmann {

void EpsilonSearch::validate() const {
  if (initial.sign() <= 0 || initial > Rational(1)) throw ValidationError("epsilon initial must lie in (0, 1]");
  if (shrink_factor.sign() <= 0 || shrink_factor >= Rational(1)) {
    throw ValidationError("epsilon shrink factor must lie in (0, 1)");
  }
  if (max_iterations < 1) throw ValidationError("epsilon search needs at least one iteration");
}

namespace {

void require_input(const MultiVector& omega, bool positive, const char* what) {
  if (omega.is_zero()) throw ValidationError(std::string(what) + ": input is zero");
  const SignClass s = classify_sign(omega);
  if (positive && s != SignClass::Positive) {
    throw ValidationError(std::string(what) + ": input must be Positive, got " + to_string(s));
  }
  if (!positive && s != SignClass::Positive && s != SignClass::Nonnegative) {
    throw ValidationError(std::string(what) + ": input must be nonnegative, got " + to_string(s));
  }
  if (!is_normalized(omega)) throw ValidationError(std::string(what) + ": input is not normalized");
  if (!is_decomposable(omega)) throw ValidationError(std::string(what) + ": input is not decomposable");
}

MultiVector row_vector(const Row<Rational>& r) { return MultiVector::vector(r); }

MultiVector wedge_rows(int n, const Matrix<Rational>& rows) {
  MultiVector out = MultiVector::scalar(n, Rational(1));
  for (const auto& r : rows) out = wedge(out, row_vector(r));
  return out;
}

Row<Rational> combine(const Rational& a, const Row<Rational>& x, const Rational& b, const Row<Rational>& y) {
  Row<Rational> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

// First support index of a nonzero element, used to compare proportional elements.
Rational ratio(const MultiVector& target, const MultiVector& base) {
  const auto& [a, value] = *base.coefficients().begin();
  return target.coefficient(a) / value;
}

// A row from `pool` that is independent of `existing`, scaled so that
// row ∧ (wedge of existing) equals `target` exactly.
Row<Rational> completion_row(int n, const Matrix<Rational>& pool, const Matrix<Rational>& existing,
                             const MultiVector& target) {
  const MultiVector tail = wedge_rows(n, existing);
  for (const auto& candidate : pool) {
    const MultiVector product = wedge(row_vector(candidate), tail);
    if (product.is_zero()) continue;
    const Rational scale = ratio(target, product);
    Row<Rational> out = candidate;
    for (auto& x : out) x *= scale;
    return out;
  }
  throw DecomposabilityError("no completion row found; planes are not nested");
}

// Positive multiple of x with largest absolute entry 1.
Row<Rational> unit_max(Row<Rational> x) {
  Rational m(0);
  for (const auto& v : x) m = std::max(m, abs(v));
  if (!m.is_zero()) {
    for (auto& v : x) v /= m;
  }
  return x;
}

}  // namespace

MultiVector shrink_candidate(int n, const Matrix<Rational>& factors, const Rational& epsilon) {
  const std::size_t k = factors.size();
  if (k < 2) throw GradeError("shrink candidate needs at least two factors");
  if (k == 2) return row_vector(combine(epsilon, factors[0], Rational(1), factors[1]));
  Matrix<Rational> rows;
  rows.push_back(combine(epsilon, factors[1], Rational(1), factors[2]));
  rows.push_back(combine(-(epsilon * epsilon), factors[0], Rational(1), factors[2]));
  for (std::size_t i = 3; i < k; ++i) rows.push_back(factors[i]);
  return wedge_rows(n, rows);
}

MultiVector shrink_nonneg(const MultiVector& omega, bool validate) {
  if (omega.grade() < 1) throw GradeError("shrink needs grade at least 1");
  if (validate) require_input(omega, false, "shrink_nonneg");
  if (omega.grade() == 1) return MultiVector::scalar(omega.n(), Rational(1));
  const PlaneMatrix basis = spanning_vectors(omega);
  Matrix<Rational> tail(basis.rows().begin() + 1, basis.rows().end());
  MultiVector eta = normalize(plucker_of_rows(omega.n(), tail));
  if (!is_nonnegative(eta)) throw ValidationError("shrink_nonneg produced a non-nonnegative element");
  return eta;
}

MultiVector shrink_positive(const MultiVector& omega, const EpsilonSearch& cfg, bool validate, EpsilonLog* log) {
  const int n = omega.n();
  const int k = omega.grade();
  if (k < 1) throw GradeError("shrink needs grade at least 1");
  if (validate) {
    cfg.validate();
    require_input(omega, true, "shrink_positive");
  }
  if (k == 1) return MultiVector::scalar(n, Rational(1));

  const PlaneMatrix basis = spanning_vectors(omega);
  const Row<Rational>& lead = basis.row(0);  // e_1 + v_1: the first pivot is column 1
  const MultiVector mu = contract(omega, MultiVector::basis(n, IndexSet{1}));  // v_2 ∧ ⋯ ∧ v_k

  Matrix<Rational> factors{lead};
  if (k == 2) {
    Row<Rational> v2(static_cast<std::size_t>(n), Rational(0));
    for (const auto& [a, value] : mu.coefficients()) v2[static_cast<std::size_t>(a.elements()[0] - 1)] = value;
    factors.push_back(std::move(v2));
  } else {
    // Positive w_3 ∧ ⋯ ∧ w_k ⊂ μ from the recursive call on ℝ^{n−1}.
    const MultiVector inner =
        prepend_index(shrink_positive(normalize(drop_first_index(mu)), cfg, false, log));
    Matrix<Rational> w_tail = spanning_vectors(inner).rows();
    const MultiVector tail_wedge = wedge_rows(n, w_tail);
    const Rational fix = ratio(inner, tail_wedge);
    for (auto& x : w_tail.front()) x *= fix;
    const Row<Rational> w2 = completion_row(n, spanning_vectors(mu).rows(), w_tail, mu);
    factors.push_back(w2);
    factors.insert(factors.end(), w_tail.begin(), w_tail.end());
  }

  // Positive rescaling keeps every hypothesis on the factors; balancing their
  // magnitudes keeps the admissible ε independent of the input's scale.
  for (auto& f : factors) f = unit_max(std::move(f));

  Rational epsilon = cfg.initial;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const MultiVector candidate = shrink_candidate(n, factors, epsilon);
    if (classify_sign(candidate) == SignClass::Positive) {
      if (log) log->push_back({k - 1, n, epsilon, it});
      return normalize(candidate);
    }
    epsilon *= cfg.shrink_factor;
  }
  throw EpsilonExhausted("shrink_positive: no positive candidate after " + std::to_string(cfg.max_iterations) +
                         " epsilon values");
}

MultiVector extend_nonneg(const MultiVector& omega, bool validate) {
  const int n = omega.n();
  if (omega.grade() >= n) throw GradeError("cannot extend a grade-n element");
  if (validate) require_input(omega, false, "extend_nonneg");
  if (omega.is_zero()) throw ValidationError("extend_nonneg: input is zero");
  int j = 1;
  for (; j <= n; ++j) {
    bool omitted = false;
    for (const auto& [a, value] : omega.coefficients()) {
      if (!a.contains(j)) {
        omitted = true;
        break;
      }
    }
    if (omitted) break;
  }
  const Rational sign = (j - 1) % 2 == 0 ? Rational(1) : Rational(-1);
  return sign * wedge(MultiVector::basis(n, IndexSet{j}), omega);
}

MultiVector extend_positive(const MultiVector& omega, const EpsilonSearch& cfg, bool validate, EpsilonLog* log) {
  const int n = omega.n();
  const int k = omega.grade();
  if (k >= n) throw GradeError("cannot extend a grade-n element");
  if (validate) {
    cfg.validate();
    require_input(omega, true, "extend_positive");
  }
  if (n == k + 1) {
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) all.push_back(i);
    return MultiVector::basis(n, IndexSet(all));
  }

  MultiVector omega2(n, k);  // terms not involving e_1
  for (const auto& [a, value] : omega.coefficients()) {
    if (!a.contains(1)) omega2 += MultiVector(n, k, {{a, value}});
  }
  const MultiVector mu =
      prepend_index(extend_positive(normalize(drop_first_index(omega2)), cfg, false, log));
  // v with v ∧ ω₂ = μ; rows of μ's plane never involve e_1.
  const Matrix<Rational> omega2_rows = spanning_vectors(omega2).rows();
  const Row<Rational> v_raw = completion_row(n, spanning_vectors(mu).rows(), omega2_rows, mu);
  // completion_row matched v ∧ (wedge of ω₂'s rows); rescale to v ∧ ω₂ = μ.
  const MultiVector v_probe = wedge(row_vector(v_raw), omega2);
  const Rational fix = ratio(mu, v_probe);
  const MultiVector v = row_vector(unit_max(v_raw)) * (fix.sign() > 0 ? Rational(1) : Rational(-1));

  const MultiVector e1 = MultiVector::basis(n, IndexSet{1});
  Rational epsilon = cfg.initial;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const MultiVector candidate = wedge(e1 + v * epsilon, omega);
    if (classify_sign(candidate) == SignClass::Positive) {
      if (log) log->push_back({k + 1, n, epsilon, it});
      return normalize(candidate);
    }
    epsilon *= cfg.shrink_factor;
  }
  throw EpsilonExhausted("extend_positive: no positive candidate after " + std::to_string(cfg.max_iterations) +
                         " epsilon values");
}

}  // namespace grassmann
