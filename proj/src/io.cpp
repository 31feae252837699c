#include "hodgelab/io.hpp"

#include <fstream>

namespace hodgelab {

Json rational_to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw DomainError("expected a rational string, got " + j.dump());
}

Json quad_to_json(const QuadNumber& x) {
  if (x.is_rational()) return to_string(x.a());
  return Json::array({to_string(x.a()), to_string(x.b())});
}

QuadNumber quad_from_json(const Json& j, FieldSpec field) {
  if (j.is_array()) {
    if (j.size() != 2) throw DomainError("quadratic coefficient must have two entries");
    return {rational_from_json(j[0]), rational_from_json(j[1]), field};
  }
  return QuadNumber(rational_from_json(j));
}

Json matrix_to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(quad_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("matrix must be an array of rows");
  std::vector<QVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  return QMatrix::from_rows(rows);
}

Json vector_to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json vector_to_json(const ExactVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(quad_to_json(x));
  return out;
}

QVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("vector must be an array");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

QuadraticSpace space_from_json(const Json& j) {
  if (j.is_array()) return QuadraticSpace(matrix_from_json(j));
  if (!j.contains("gram")) throw DomainError("space JSON needs a \"gram\" entry");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return QuadraticSpace(matrix_from_json(j.at("gram")), std::move(labels));
}

Json space_to_json(const QuadraticSpace& s) {
  Json out;
  out["dim"] = s.dim();
  out["gram"] = matrix_to_json(s.gram());
  out["labels"] = s.labels();
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

}  // namespace hodgelab
