#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nahm/matrix.hpp"
#include "nahm/nahmsum.hpp"
#include "nahm/qseries.hpp"
#include "nahm/search.hpp"
#include "nahm/tba.hpp"

namespace nahm {

// Key order is part of the format, hence ordered_json.
using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& value);
// Accepts "p/q" strings and JSON integers. Throws ParseError.
Rational rational_from_json(const Json& j);

Json rationals_to_json(const std::vector<Rational>& values);
std::vector<Rational> rationals_from_json(const Json& j);

// {"lattice_den": N, "offset": "p/q", "coeffs": [...], "order": T}
Json series_to_json(const PuiseuxSeries& s);
PuiseuxSeries series_from_json(const Json& j);

// {"rows": r, "cols": c, "entries": [[...], ...]}
Json matrix_to_json(const MatrixQ& m);
// Also accepts a bare array of rows.
MatrixQ matrix_from_json(const Json& j);

// {"A": matrix, "B": [...], "C": "p/q"}
Json datum_to_json(const NahmDatum& d);
NahmDatum datum_from_json(const Json& j);

// {"B": [...], "C": "p/q", "matched": name, "order": T, "residual": "3.1e-41"}
Json record_to_json(const MatchRecord& r);
Json records_to_json(const std::vector<MatchRecord>& records);

// CSV summary, one "B;C;matched" row per record with B entries joined by ','.
std::string records_to_csv(const std::vector<MatchRecord>& records);

// Throws ParseError with the parser message.
Json parse_json(const std::string& text);

}  // namespace nahm
