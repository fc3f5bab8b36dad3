#pragma once

// JSON forms of the library's values.
//   multivector: {"n":4,"k":2,"coeffs":{"1,2":"1/10", ...}}
//   plane:       {"rows":[["1","1","1","1"],["0","1","2","3"]]}
//   split:       {"n":4,"k":2,"t":"3/5","eta":<multivector>,"omega":<multivector>}
// Rationals are "p/q" strings (plain JSON integers are accepted on input).
// Malformed input raises ParseError.

#include <string>

#include "json.hpp"

#include "grassmann/chamber.hpp"
#include "grassmann/exterior.hpp"
#include "grassmann/plucker.hpp"

namespace grassmann::json_io {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);
Json to_json(const Rational& x);

MultiVector multivector_from_json(const Json& j);
Json to_json(const MultiVector& omega);

PlaneMatrix plane_from_json(const Json& j);
Json to_json(const PlaneMatrix& m);

SplitTriple split_from_json(const Json& j);
Json to_json(const SplitTriple& s);

/// Dense floating coefficients with their index sets.
Json to_json(const DenseForm& rho);

/// Parses text as JSON, mapping syntax errors to ParseError.
Json parse(const std::string& text);

}  // namespace grassmann::json_io
