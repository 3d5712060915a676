#include "nahm/json_io.hpp"

#include <sstream>

#include "nahm/errors.hpp"

namespace nahm {

Json rational_to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw ParseError("expected a rational string or an integer, got " + j.dump());
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json series_to_json(const PuiseuxSeries& s) {
  Json out;
  out["lattice_den"] = s.lattice_den();
  out["offset"] = rational_to_json(s.offset());
  out["coeffs"] = rationals_to_json(s.coefficients());
  out["order"] = s.order();
  return out;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

PuiseuxSeries series_from_json(const Json& j) {
  const Json& n = field(j, "lattice_den");
  if (!n.is_number_integer()) throw ParseError("lattice_den must be an integer");
  std::vector<Rational> coeffs = rationals_from_json(field(j, "coeffs"));
  if (j.contains("order") && j["order"].get<long long>() + 1 != static_cast<long long>(coeffs.size())) {
    throw ParseError("order does not match the coefficient count");
  }
  return PuiseuxSeries(n.get<std::int64_t>(), rational_from_json(field(j, "offset")), std::move(coeffs));
}

Json matrix_to_json(const MatrixQ& m) {
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
    entries.push_back(std::move(row));
  }
  out["entries"] = std::move(entries);
  return out;
}

MatrixQ matrix_from_json(const Json& j) {
  const Json& entries = j.is_array() ? j : field(j, "entries");
  if (!entries.is_array() || entries.empty()) throw ParseError("matrix needs a nonempty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : entries) rows.push_back(rationals_from_json(row));
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
  }
  MatrixQ m(rows);
  if (j.is_object()) {
    if (j.contains("rows") && j["rows"].get<std::size_t>() != m.rows()) throw ParseError("row count mismatch");
    if (j.contains("cols") && j["cols"].get<std::size_t>() != m.cols()) throw ParseError("column count mismatch");
  }
  return m;
}

Json datum_to_json(const NahmDatum& d) {
  Json out;
  out["A"] = matrix_to_json(d.A);
  out["B"] = rationals_to_json(d.B);
  out["C"] = rational_to_json(d.C);
  return out;
}

NahmDatum datum_from_json(const Json& j) {
  return NahmDatum{matrix_from_json(field(j, "A")), rationals_from_json(field(j, "B")), rational_from_json(field(j, "C"))};
}

Json record_to_json(const MatchRecord& r) {
  Json out;
  out["B"] = rationals_to_json(r.B);
  out["C"] = rational_to_json(r.C);
  out["matched"] = r.matched;
  out["order"] = r.order;
  out["residual"] = to_short_string(r.residual);
  return out;
}

Json records_to_json(const std::vector<MatchRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(record_to_json(r));
  return out;
}

std::string records_to_csv(const std::vector<MatchRecord>& records) {
  std::ostringstream os;
  os << "B;C;matched\n";
  for (const auto& r : records) {
    for (std::size_t i = 0; i < r.B.size(); ++i) os << (i ? "," : "") << to_string(r.B[i]);
    os << ';' << to_string(r.C) << ';' << r.matched << '\n';
  }
  return os.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace nahm
