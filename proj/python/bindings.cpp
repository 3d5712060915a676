#include <cmath>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nahm/characters.hpp"
#include "nahm/errors.hpp"
#include "nahm/json_io.hpp"
#include "nahm/liealg.hpp"
#include "nahm/search.hpp"

namespace py = pybind11;
using namespace nahm;

// Everything crosses the boundary as JSON text; the Python side turns
// rational strings into Fractions.
namespace {

std::string series(const std::string& datum, int order) {
  return series_to_json(nahm_sum(datum_from_json(parse_json(datum)), order)).dump();
}

std::string character(const std::string& label, int order) {
  return series_to_json(character_series(parse_label(label), order)).dump();
}

std::string combinations(int k) {
  Json out = Json::array();
  for (const auto& t : predicted_combinations(k)) out.push_back(t.name);
  return out.dump();
}

std::string search(const std::string& family, int param, const std::string& lo, const std::string& hi,
                   const std::vector<int>& denominators, int order, unsigned jobs) {
  SearchConfig cfg;
  if (family == "minimal") {
    cfg.family = MinimalFamily{param};
  } else if (family == "coset") {
    cfg.family = CosetFamily{param};
  } else {
    throw InputError("family must be minimal or coset");
  }
  cfg.range = SearchRange{parse_rational(lo), parse_rational(hi)};
  cfg.denominators = denominators;
  cfg.order = order;
  cfg.jobs = jobs;
  cfg.validate();
  py::gil_scoped_release release;
  return records_to_json(run_search(cfg).records).dump();
}

std::string tba(const std::string& matrix, int digits) {
  PrecisionConfig precision;
  precision.working_digits = digits;
  precision.solver_tol = std::pow(10.0, -(digits - 10));
  const PrecisionScope scope(static_cast<unsigned>(digits));
  const MatrixQ a = matrix_from_json(parse_json(matrix));
  NahmDatum{a, std::vector<Rational>(a.rows()), Rational(0)}.validate();
  const TBASolution sol = solve_tba(a, precision);
  Json j;
  Json xs = Json::array();
  for (const auto& x : sol.x) xs.push_back(to_decimal_string(x, digits - 10));
  j["x"] = std::move(xs);
  j["residual"] = to_short_string(sol.residual);
  j["ceff_dilog"] = to_decimal_string(dilog_ceff(sol.x), digits - 10);
  return j.dump();
}

std::string dual(const std::string& datum) { return datum_to_json(dual_transform(datum_from_json(parse_json(datum)))).dump(); }

std::string matrix(const std::string& family, int param) {
  return matrix_to_json(family == "minimal" ? minimal_family_matrix(param) : coset_family_matrix(param)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  // Most recently registered is tried first, so the base goes first.
  py::register_exception<Error>(m, "NahmError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  m.def("series", &series, py::arg("datum"), py::arg("order"));
  m.def("character", &character, py::arg("label"), py::arg("order"));
  m.def("combinations", &combinations, py::arg("k"));
  m.def("search", &search, py::arg("family"), py::arg("param"), py::arg("lo"), py::arg("hi"),
        py::arg("denominators"), py::arg("order"), py::arg("jobs"));
  m.def("tba", &tba, py::arg("matrix"), py::arg("digits"));
  m.def("dual", &dual, py::arg("datum"));
  m.def("family_matrix", &matrix, py::arg("family"), py::arg("param"));
}
