#include "json_io.hpp"

#include "grassmann/errors.hpp"

namespace grassmann::json_io {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

int integer_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"p/q\" string or an integer");
}

Json to_json(const Rational& x) { return x.str(); }

MultiVector multivector_from_json(const Json& j) {
  const int n = integer_field(j, "n");
  const int k = integer_field(j, "k");
  if (n < 0 || k < 0 || k > n) throw ParseError("multivector needs 0 ≤ k ≤ n");
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_object()) throw ParseError("'coeffs' must be an object");
  MultiVector::Coefficients c;
  for (const auto& [key, value] : coeffs.items()) {
    const IndexSet a = IndexSet::parse(key);
    if (a.size() != k) throw ParseError("index set '" + key + "' does not have size k");
    if (!a.empty() && (a.elements().front() < 1 || a.max_element() > n)) {
      throw ParseError("index set '" + key + "' is outside 1..n");
    }
    if (c.count(a) != 0) throw ParseError("index set '" + key + "' appears twice");
    const Rational r = rational_from_json(value);
    if (!r.is_zero()) c.emplace(a, r);
  }
  return MultiVector(n, k, c);
}

Json to_json(const MultiVector& omega) {
  Json coeffs = Json::object();
  for (const auto& [a, value] : omega.coefficients()) coeffs[a.str()] = value.str();
  return Json{{"n", omega.n()}, {"k", omega.grade()}, {"coeffs", coeffs}};
}

PlaneMatrix plane_from_json(const Json& j) {
  const Json& rows = field(j, "rows");
  if (!rows.is_array() || rows.empty()) throw ParseError("'rows' must be a nonempty array");
  Matrix<Rational> m;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("each row must be an array");
    Row<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    m.push_back(std::move(r));
  }
  const int n = static_cast<int>(m[0].size());
  for (const auto& r : m) {
    if (static_cast<int>(r.size()) != n) throw ParseError("rows have different lengths");
  }
  try {
    return PlaneMatrix(n, std::move(m));
  } catch (const RankError& e) {
    throw ParseError(std::string("rows do not span a plane: ") + e.what());
  }
}

Json to_json(const PlaneMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.rows()) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  return Json{{"rows", rows}};
}

SplitTriple split_from_json(const Json& j) {
  SplitTriple s;
  s.n = integer_field(j, "n");
  s.k = integer_field(j, "k");
  s.t = rational_from_json(field(j, "t"));
  if (j.contains("eta") && !j["eta"].is_null()) s.eta = multivector_from_json(j["eta"]);
  if (j.contains("omega") && !j["omega"].is_null()) s.omega = multivector_from_json(j["omega"]);
  return s;
}

Json to_json(const SplitTriple& s) {
  return Json{{"n", s.n},
              {"k", s.k},
              {"t", s.t.str()},
              {"eta", s.eta ? to_json(*s.eta) : Json(nullptr)},
              {"omega", s.omega ? to_json(*s.omega) : Json(nullptr)}};
}

Json to_json(const DenseForm& rho) {
  Json coeffs = Json::object();
  const auto subsets = k_subsets(rho.n, rho.k);
  for (std::size_t i = 0; i < subsets.size(); ++i) coeffs[subsets[i].str()] = rho.c[i];
  return Json{{"n", rho.n}, {"k", rho.k}, {"coeffs", coeffs}};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace grassmann::json_io
