#include "nahm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nahm/characters.hpp"
#include "nahm/errors.hpp"
#include "nahm/json_io.hpp"
#include "nahm/liealg.hpp"
#include "nahm/search.hpp"
#include "nahm/verify.hpp"

namespace nahm {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\n\"'");
  const auto e = s.find_last_not_of(" \t\n\"'");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// "[[3/2,1],[1,2]]", or a bare rational for a 1x1 matrix.
MatrixQ parse_matrix_text(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ParseError("empty matrix");
  if (s.front() != '[') return MatrixQ{{parse_rational(s)}};
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= s.size() || s[pos] != c) throw ParseError("malformed matrix '" + text + "': expected '" + c + "'");
    ++pos;
  };
  std::vector<std::vector<Rational>> rows;
  expect('[');
  while (true) {
    expect('[');
    std::vector<Rational> row;
    while (true) {
      skip();
      const auto end = s.find_first_of(",]", pos);
      if (end == std::string::npos) throw ParseError("malformed matrix '" + text + "'");
      row.push_back(parse_rational(trim(s.substr(pos, end - pos))));
      pos = end + 1;
      if (s[end] == ']') break;
    }
    rows.push_back(std::move(row));
    skip();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    expect(']');
    break;
  }
  skip();
  if (pos != s.size()) throw ParseError("trailing text after matrix '" + text + "'");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
  }
  return MatrixQ(rows);
}

// "-1/2,-1,-1/2", optionally bracketed.
std::vector<Rational> parse_vector_text(const std::string& text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ParseError("malformed vector '" + text + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Rational> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_rational(trim(item)));
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(trim(text), ',')) {
    const Rational v = parse_rational(trim(item));
    if (v.get_den() != 1 || !v.get_num().fits_sint_p()) throw ParseError("expected an integer, got '" + item + "'");
    out.push_back(static_cast<int>(v.get_num().get_si()));
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

SearchRange parse_range(const std::string& text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 2) throw ParseError("range must look like lo:hi, got '" + text + "'");
  return {parse_rational(trim(parts[0])), parse_rational(trim(parts[1]))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  std::string path;
  std::ostream* stream;

  void write(const std::string& text) const {
    if (path.empty()) {
      *stream << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }
};

struct DatumFlags {
  std::string a, b, c = "0", datum;

  void attach(CLI::App* cmd) {
    cmd->add_option("--A", a, "matrix A, e.g. \"[[3/2,1],[1,2]]\"");
    cmd->add_option("--B", b, "vector B, e.g. \"-1/2,0\"");
    cmd->add_option("--C", c, "scalar C")->capture_default_str();
    cmd->add_option("--datum", datum, "JSON file {\"A\":...,\"B\":[...],\"C\":\"p/q\"}");
  }

  NahmDatum resolve() const {
    NahmDatum d;
    if (!datum.empty()) {
      if (!a.empty() || !b.empty()) throw InputError("use either --datum or --A/--B/--C");
      d = datum_from_json(parse_json(read_file(datum)));
    } else {
      if (a.empty() || b.empty()) throw InputError("--A and --B are required (or --datum)");
      d = NahmDatum{parse_matrix_text(a), parse_vector_text(b), parse_rational(trim(c))};
    }
    d.validate();
    return d;
  }
};

struct FamilyFlags {
  std::string family;
  int n = 0;
  int k = 0;
  std::string a;
  std::string targets;

  void attach(CLI::App* cmd, bool with_targets) {
    cmd->add_option("--family", family, "minimal | coset | explicit")
        ->required()
        ->check(CLI::IsMember({"minimal", "coset", "explicit"}));
    cmd->add_option("--n", n, "minimal family: (A1, T_n)");
    cmd->add_option("--k", k, "coset family: (A1, A_{k-1})");
    cmd->add_option("--A", a, "explicit family: matrix A");
    if (with_targets) {
      cmd->add_option("--targets", targets,
                      "explicit family: ';'-separated combinations, e.g. \"2*coset:k=2,l=1,m=1;minimal:p=5,s=1\"");
    }
  }

  SearchFamily resolve(bool need_targets) const {
    if (family == "minimal") {
      if (n < 1) throw InputError("--family minimal needs --n >= 1");
      return MinimalFamily{n};
    }
    if (family == "coset") {
      if (k < 2) throw InputError("--family coset needs --k >= 2");
      return CosetFamily{k};
    }
    if (a.empty()) throw InputError("--family explicit needs --A");
    ExplicitFamily f{parse_matrix_text(a), {}};
    if (need_targets) {
      if (targets.empty()) throw InputError("--family explicit needs --targets");
      for (const auto& combo : split(targets, ';')) {
        std::vector<std::pair<CharacterLabel, int>> terms;
        for (const auto& term : split(trim(combo), '+')) {
          const std::string t = trim(term);
          const auto star = t.find('*');
          int mult = 1;
          std::string label = t;
          if (star != std::string::npos) {
            mult = parse_int_list(t.substr(0, star)).front();
            label = t.substr(star + 1);
          }
          const CharacterLabel parsed = parse_label(label);
          validate_label(parsed);
          terms.emplace_back(parsed, mult);
        }
        f.targets.push_back(make_combination(std::move(terms)));
      }
    }
    return f;
  }
};

std::string series_text(const PuiseuxSeries& s) {
  std::ostringstream os;
  for (std::int64_t i = 0; i <= s.order(); ++i) {
    const Rational& c = s.coefficients()[static_cast<std::size_t>(i)];
    if (c != 0) os << "q^" << to_string(s.exponent_at(i)) << ": " << to_string(c) << '\n';
  }
  return os.str();
}

PrecisionConfig precision_from(int digits) {
  PrecisionConfig p;
  p.working_digits = digits;
  p.validate();
  return p;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nahm sum search: q-series, characters, TBA asymptotics and B-vector searches"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write the result to this file instead of stdout");

  // series
  auto* series = app.add_subcommand("series", "expand f_{A,B,C}");
  DatumFlags series_datum;
  series_datum.attach(series);
  int series_order = kDefaultOrder;
  std::string series_format = "json";
  series->add_option("--order", series_order, "powers of q beyond the leading one")->capture_default_str();
  series->add_option("--format", series_format, "json | text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  series->add_option("--out", out_path, "output file");

  // characters
  auto* characters = app.add_subcommand("characters", "dump character series");
  std::string model;
  std::optional<int> ch_p, ch_n, ch_s, ch_k, ch_l, ch_m;
  std::vector<std::string> ch_labels;
  int ch_order = kDefaultOrder;
  characters->add_option("--model", model, "minimal | coset")->check(CLI::IsMember({"minimal", "coset"}));
  characters->add_option("--p", ch_p, "minimal model (p,2), p odd >= 5");
  characters->add_option("--n", ch_n, "minimal model with p = 2n+3");
  characters->add_option("--s", ch_s, "single minimal character");
  characters->add_option("--k", ch_k, "coset level");
  characters->add_option("--l", ch_l, "single coset character: l");
  characters->add_option("--m", ch_m, "single coset character: m");
  characters->add_option("--label", ch_labels, "explicit label, e.g. coset:k=4,l=2,m=0 (repeatable)");
  characters->add_option("--order", ch_order, "powers of q beyond the leading one")->capture_default_str();
  characters->add_option("--out", out_path, "output file");

  // search
  auto* search = app.add_subcommand("search", "search B-values for a family");
  FamilyFlags search_family;
  search_family.attach(search, true);
  std::string range_text, denoms_text = "1,2,3,4", csv_path;
  int search_order = kDefaultOrder, digits = 60, max_den = 10000;
  std::optional<int> filter_digits, recon_digits;
  unsigned jobs = 1;
  bool show_stats = false, no_reverify = false;
  search->add_option("--range", range_text, "lo:hi per coordinate (default -8:8, -2:2 from rank 4)");
  search->add_option("--denoms", denoms_text, "denominators of the B grid")->capture_default_str();
  search->add_option("--order", search_order, "comparison order")->capture_default_str();
  search->add_option("--digits", digits, "working precision in decimal digits")->capture_default_str();
  search->add_option("--filter-digits", filter_digits, "residual must be <= 10^-this (default digits/2)");
  search->add_option("--recon-digits", recon_digits, "C reconstruction tolerance 10^-this (default digits/2)");
  search->add_option("--max-den", max_den, "largest denominator accepted for C")->capture_default_str();
  search->add_option("--jobs", jobs, "worker threads (0: all cores)")->capture_default_str();
  search->add_option("--csv", csv_path, "also write a B;C;matched summary");
  search->add_flag("--stats", show_stats, "per-denominator counts on stderr");
  search->add_flag("--no-reverify", no_reverify, "skip the order+5 recheck of matches");
  search->add_option("--out", out_path, "output file");

  // tba
  auto* tba = app.add_subcommand("tba", "solve x_i = prod_j (1-x_j)^A_ij and report c_eff");
  FamilyFlags tba_family;
  tba_family.attach(tba, false);
  int tba_digits = 60;
  bool with_f = false;
  tba->add_option("--digits", tba_digits, "working precision in decimal digits")->capture_default_str();
  tba->add_flag("--with-F", with_f, "include the F matrix");
  tba->add_option("--out", out_path, "output file");

  // dual
  auto* dual = app.add_subcommand("dual", "(A, B, C) -> (A^-1, A^-1 B, B.A^-1.B/2 - r/24 - C)");
  DatumFlags dual_datum;
  dual_datum.attach(dual);
  dual->add_option("--out", out_path, "output file");

  // verify
  auto* verify = app.add_subcommand("verify", "replay the golden checks");
  std::string suite = "all";
  unsigned verify_jobs = 1;
  verify->add_option("--suite", suite, "all | characters | asymptotics | dilog | minimal | coset | families | duality")
      ->capture_default_str();
  verify->add_option("--jobs", verify_jobs, "worker threads for the searches")->capture_default_str();
  verify->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Output output{out_path, &out};
  try {
    if (*series) {
      const NahmDatum d = series_datum.resolve();
      const PuiseuxSeries s = nahm_sum(d, series_order);
      output.write(series_format == "json" ? series_to_json(s).dump() + "\n" : series_text(s));
    } else if (*characters) {
      std::vector<CharacterLabel> labels;
      for (const auto& text : ch_labels) labels.push_back(parse_label(text));
      if (model == "minimal") {
        if (ch_p && ch_n) throw InputError("give either --p or --n");
        if (!ch_p && !ch_n) throw InputError("--model minimal needs --p or --n");
        const int p = ch_p ? *ch_p : 2 * *ch_n + 3;
        validate_label(MinimalLabel{p, 1});
        if (ch_s) {
          labels.push_back(MinimalLabel{p, *ch_s});
        } else {
          for (int s = 1; s <= (p - 1) / 2; ++s) labels.push_back(MinimalLabel{p, s});
        }
      } else if (model == "coset") {
        if (!ch_k) throw InputError("--model coset needs --k");
        if (ch_l.has_value() != ch_m.has_value()) throw InputError("give both --l and --m, or neither");
        if (ch_l) {
          labels.push_back(CosetLabel{*ch_k, *ch_l, *ch_m});
        } else {
          if (*ch_k < 1) throw LabelError("level k must be positive");
          std::vector<CosetLabel> canon;
          for (int l = 0; l <= *ch_k; ++l) {
            for (int m = -*ch_k + 1; m <= *ch_k; ++m) {
              if ((l + m) % 2 != 0) continue;
              const CosetLabel c = canonical_coset_label({*ch_k, l, m});
              if (std::find(canon.begin(), canon.end(), c) == canon.end()) canon.push_back(c);
            }
          }
          std::sort(canon.begin(), canon.end());
          for (const auto& c : canon) labels.push_back(c);
        }
      }
      if (labels.empty()) throw InputError("nothing to print: give --model or --label");
      for (const auto& l : labels) validate_label(l);
      std::string text;
      for (const auto& l : labels) {
        text += label_name(l) + "\n" + series_to_json(character_series(l, ch_order)).dump() + "\n";
      }
      output.write(text);
    } else if (*search) {
      SearchConfig cfg;
      cfg.family = search_family.resolve(true);
      if (!range_text.empty()) cfg.range = parse_range(range_text);
      cfg.denominators = parse_int_list(denoms_text);
      cfg.order = search_order;
      cfg.precision = precision_from(digits);
      cfg.screen.filter_tol_digits = filter_digits;
      cfg.screen.recon_tol_digits = recon_digits;
      cfg.screen.max_denominator = max_den;
      cfg.jobs = jobs;
      cfg.reverify = !no_reverify;
      SearchResult result;
      try {
        result = run_search(cfg);
      } catch (const SearchAborted& e) {
        output.write(records_to_json(e.partial()).dump(2) + "\n");
        throw;
      }
      output.write(records_to_json(result.records).dump(2) + "\n");
      if (!csv_path.empty()) Output{csv_path, &out}.write(records_to_csv(result.records));
      if (show_stats) {
        for (const auto& s : result.stats) {
          err << "d=" << s.denominator << " candidates=" << s.candidates << " prefilter=" << s.prefilter_passed
              << " screened=" << s.screened << " matches=" << s.matches << '\n';
        }
      }
    } else if (*tba) {
      const SearchFamily family = tba_family.resolve(false);
      const PrecisionConfig precision = precision_from(tba_digits);
      const PrecisionScope scope(static_cast<unsigned>(precision.working_digits));
      const MatrixQ a = family_matrix(family);
      NahmDatum{a, std::vector<Rational>(a.rows()), Rational(0)}.validate();
      const TBASolution sol = solve_tba(a, precision);
      const int shown = precision.working_digits - 10;
      Json j;
      Json xs = Json::array();
      for (const auto& x : sol.x) xs.push_back(to_decimal_string(x, shown));
      j["x"] = std::move(xs);
      j["residual"] = to_short_string(sol.residual);
      j["ceff_dilog"] = to_decimal_string(dilog_ceff(sol.x), shown);
      if (const auto* f = std::get_if<MinimalFamily>(&family)) {
        j["ceff_formula"] = to_string(effective_central_charge({DynkinFamily::A, 1}, {DynkinFamily::T, f->n}));
      } else if (const auto* c = std::get_if<CosetFamily>(&family)) {
        j["ceff_formula"] = to_string(effective_central_charge({DynkinFamily::A, 1}, {DynkinFamily::A, c->k - 1}));
      }
      if (with_f) {
        Json rows = Json::array();
        for (const auto& row : sol.F) {
          Json r = Json::array();
          for (const auto& v : row) r.push_back(to_decimal_string(v, shown));
          rows.push_back(std::move(r));
        }
        j["F"] = std::move(rows);
      }
      output.write(j.dump() + "\n");
    } else if (*dual) {
      output.write(datum_to_json(dual_transform(dual_datum.resolve())).dump() + "\n");
    } else if (*verify) {
      const auto results = run_verify(suite, verify_jobs);
      std::ostringstream os;
      std::size_t passed = 0;
      for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        os << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name;
        if (!r.detail.empty()) os << " [" << r.detail << "]";
        os << '\n';
      }
      os << passed << "/" << results.size() << " checks passed\n";
      output.write(os.str());
      return passed == results.size() ? 0 : 1;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nahm
