#pragma once

#include <string>

#include <json.hpp>

#include "hodgelab/matrix.hpp"
#include "hodgelab/qspace.hpp"

namespace hodgelab {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);

/// Rationals as "p/q"; irrational elements as ["a", "b"].
Json quad_to_json(const QuadNumber& x);
QuadNumber quad_from_json(const Json& j, FieldSpec field);

Json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ExactMatrix& m);
Json vector_to_json(const QVector& v);
Json vector_to_json(const ExactVector& v);
QVector vector_from_json(const Json& j);

/// Accepts either a bare Gram array or {"gram": [...], "labels": [...]}.
QuadraticSpace space_from_json(const Json& j);
Json space_to_json(const QuadraticSpace& s);

Json read_json_file(const std::string& path);

}  // namespace hodgelab
