#include "grassmann/exterior.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "grassmann/errors.hpp"

namespace grassmann {

IndexSet::IndexSet(std::vector<int> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 1) throw DomainError("index sets are 1-based");
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw DomainError("index set must be strictly increasing");
    }
  }
}

IndexSet IndexSet::parse(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return IndexSet();
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    int value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last) {
      throw ParseError("malformed index set '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return IndexSet(std::move(out));
  } catch (const DomainError& e) {
    throw ParseError("malformed index set '" + std::string(text) + "': " + e.what());
  }
}

bool IndexSet::contains(int index) const {
  return std::binary_search(elements_.begin(), elements_.end(), index);
}

std::string IndexSet::str() const {
  std::string out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elements_[i]);
  }
  return out;
}

IndexSet IndexSet::complement(int n) const {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return IndexSet(std::move(out));
}

IndexSet IndexSet::without(int index) const {
  std::vector<int> out;
  for (int e : elements_) {
    if (e != index) out.push_back(e);
  }
  return IndexSet(std::move(out));
}

IndexSet IndexSet::with(int index) const {
  std::vector<int> out = elements_;
  out.insert(std::lower_bound(out.begin(), out.end(), index), index);
  return IndexSet(std::move(out));
}

std::vector<IndexSet> k_subsets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  std::vector<int> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

int shuffle_sign(const IndexSet& a, const IndexSet& b) {
  int inversions = 0;
  for (int x : a.elements()) {
    for (int y : b.elements()) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::string to_string(SignClass sign) {
  switch (sign) {
    case SignClass::Zero: return "Zero";
    case SignClass::Positive: return "Positive";
    case SignClass::Nonnegative: return "Nonnegative";
    case SignClass::Mixed: return "Mixed";
  }
  return "Unknown";
}

MultiVector::MultiVector(int n, int grade) : n_(n), grade_(grade) {
  if (n < 0) throw DimensionError("ambient dimension must be nonnegative");
  if (grade < 0 || grade > n) {
    throw GradeError("grade " + std::to_string(grade) + " outside [0, " + std::to_string(n) + "]");
  }
}

MultiVector::MultiVector(int n, int grade, const Coefficients& coefficients) : MultiVector(n, grade) {
  for (const auto& [a, value] : coefficients) {
    if (a.size() != grade) throw GradeError("index set " + a.str() + " does not have size " + std::to_string(grade));
    if (a.max_element() > n) throw DimensionError("index set " + a.str() + " exceeds ambient dimension");
    if (!value.is_zero()) coeffs_.emplace(a, value);
  }
}

MultiVector MultiVector::basis(int n, const IndexSet& a) {
  return MultiVector(n, a.size(), {{a, Rational(1)}});
}

MultiVector MultiVector::scalar(int n, const Rational& value) {
  return MultiVector(n, 0, {{IndexSet(), value}});
}

MultiVector MultiVector::vector(std::span<const Rational> components) {
  const int n = static_cast<int>(components.size());
  Coefficients c;
  for (int i = 0; i < n; ++i) {
    if (!components[static_cast<std::size_t>(i)].is_zero()) c.emplace(IndexSet{i + 1}, components[static_cast<std::size_t>(i)]);
  }
  return MultiVector(n, 1, c);
}

MultiVector MultiVector::from_dense(int n, int grade, std::span<const Rational> coefficients) {
  const auto subsets = k_subsets(n, grade);
  if (subsets.size() != coefficients.size()) {
    throw DimensionError("expected " + std::to_string(subsets.size()) + " coefficients, got " +
                         std::to_string(coefficients.size()));
  }
  Coefficients c;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (!coefficients[i].is_zero()) c.emplace(subsets[i], coefficients[i]);
  }
  return MultiVector(n, grade, c);
}

Rational MultiVector::coefficient(const IndexSet& a) const {
  const auto it = coeffs_.find(a);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::vector<Rational> MultiVector::dense() const {
  std::vector<Rational> out;
  for (const auto& a : k_subsets(n_, grade_)) out.push_back(coefficient(a));
  return out;
}

std::vector<double> MultiVector::dense_double() const {
  std::vector<double> out;
  for (const auto& a : k_subsets(n_, grade_)) out.push_back(coefficient(a).to_double());
  return out;
}

Rational MultiVector::coefficient_sum() const {
  Rational sum(0);
  for (const auto& [a, value] : coeffs_) sum += value;
  return sum;
}

void MultiVector::check_compatible(const MultiVector& rhs) const {
  if (n_ != rhs.n_) throw DimensionError("ambient dimensions differ");
  if (grade_ != rhs.grade_) throw GradeError("grades differ");
}

void MultiVector::add_term(const IndexSet& a, const Rational& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(a, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

MultiVector& MultiVector::operator+=(const MultiVector& rhs) {
  check_compatible(rhs);
  for (const auto& [a, value] : rhs.coeffs_) add_term(a, value);
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& rhs) {
  check_compatible(rhs);
  for (const auto& [a, value] : rhs.coeffs_) add_term(a, -value);
  return *this;
}

MultiVector& MultiVector::operator*=(const Rational& factor) {
  if (factor.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [a, value] : coeffs_) value *= factor;
  return *this;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (a.n() != b.n()) throw DimensionError("wedge of elements with different ambient dimension");
  if (a.grade() + b.grade() > a.n()) {
    throw GradeError("wedge grade " + std::to_string(a.grade() + b.grade()) + " exceeds n = " + std::to_string(a.n()));
  }
  MultiVector out(a.n(), a.grade() + b.grade());
  for (const auto& [ia, va] : a.coefficients()) {
    for (const auto& [ib, vb] : b.coefficients()) {
      const int sign = shuffle_sign(ia, ib);
      if (sign == 0) continue;
      std::vector<int> merged;
      std::merge(ia.elements().begin(), ia.elements().end(), ib.elements().begin(), ib.elements().end(),
                 std::back_inserter(merged));
      out.add_term(IndexSet(std::move(merged)), sign > 0 ? va * vb : -(va * vb));
    }
  }
  return out;
}

MultiVector contract(const MultiVector& omega, const MultiVector& v) {
  if (v.grade() != 1) throw GradeError("contraction is by a grade-1 element");
  if (omega.grade() < 1) throw GradeError("cannot contract a grade-0 element");
  if (omega.n() != v.n()) throw DimensionError("contraction of elements with different ambient dimension");
  MultiVector out(omega.n(), omega.grade() - 1);
  for (const auto& [a, wa] : omega.coefficients()) {
    const auto& elems = a.elements();
    for (std::size_t pos = 0; pos < elems.size(); ++pos) {
      const Rational vi = v.coefficient(IndexSet{elems[pos]});
      if (vi.is_zero()) continue;
      const Rational term = wa * vi;
      out.add_term(a.without(elems[pos]), pos % 2 == 0 ? term : -term);
    }
  }
  return out;
}

MultiVector contract_basis(const MultiVector& omega, const IndexSet& b) {
  MultiVector out = omega;
  for (int i : b.elements()) out = contract(out, MultiVector::basis(omega.n(), IndexSet{i}));
  return out;
}

Rational inner_product(const MultiVector& a, const MultiVector& b) {
  if (a.n() != b.n() || a.grade() != b.grade()) throw GradeError("inner product needs equal grade and dimension");
  Rational sum(0);
  for (const auto& [ia, va] : a.coefficients()) sum += va * b.coefficient(ia);
  return sum;
}

MultiVector normalize(const MultiVector& omega) {
  const Rational sum = omega.coefficient_sum();
  if (sum.is_zero()) throw NormalizationError("coefficient sum is zero; cannot normalize");
  return omega * (Rational(1) / sum);
}

bool is_normalized(const MultiVector& omega) { return omega.coefficient_sum() == Rational(1); }

SignClass classify_sign(const MultiVector& omega) {
  if (omega.is_zero()) return SignClass::Zero;
  bool any_negative = false;
  for (const auto& [a, value] : omega.coefficients()) {
    if (value.sign() < 0) any_negative = true;
  }
  if (any_negative) return SignClass::Mixed;
  return omega.support_size() == k_subsets(omega.n(), omega.grade()).size() ? SignClass::Positive
                                                                            : SignClass::Nonnegative;
}

MultiVector complement(const MultiVector& omega) {
  MultiVector::Coefficients c;
  for (const auto& [a, value] : omega.coefficients()) c.emplace(a.complement(omega.n()), value);
  return MultiVector(omega.n(), omega.n() - omega.grade(), c);
}

Rational q_form(const MultiVector& omega, const MultiVector& eta) {
  if (omega.n() != eta.n()) throw DimensionError("q_form of elements with different ambient dimension");
  if (omega.grade() != eta.grade()) throw GradeError("q_form needs equal grades");
  const MultiVector top = wedge(omega, complement(eta));
  std::vector<int> all(static_cast<std::size_t>(omega.n()));
  for (int i = 0; i < omega.n(); ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return top.coefficient(IndexSet(std::move(all)));
}

MultiVector drop_first_index(const MultiVector& omega) {
  if (omega.n() < 1) throw DimensionError("no index to drop");
  MultiVector::Coefficients c;
  for (const auto& [a, value] : omega.coefficients()) {
    if (a.contains(1)) throw DomainError("element involves e_1; cannot drop the first index");
    std::vector<int> shifted;
    for (int i : a.elements()) shifted.push_back(i - 1);
    c.emplace(IndexSet(std::move(shifted)), value);
  }
  if (omega.grade() > omega.n() - 1) throw GradeError("grade exceeds reduced dimension");
  return MultiVector(omega.n() - 1, omega.grade(), c);
}

MultiVector prepend_index(const MultiVector& omega) {
  MultiVector::Coefficients c;
  for (const auto& [a, value] : omega.coefficients()) {
    std::vector<int> shifted;
    for (int i : a.elements()) shifted.push_back(i + 1);
    c.emplace(IndexSet(std::move(shifted)), value);
  }
  return MultiVector(omega.n() + 1, omega.grade(), c);
}

std::string to_string(const MultiVector& omega) {
  if (omega.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, value] : omega.coefficients()) {
    if (!first) os << " + ";
    first = false;
    os << value << "*e{" << a.str() << "}";
  }
  return os.str();
}

}  // namespace grassmann
