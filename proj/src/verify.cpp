#include "nahm/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "nahm/characters.hpp"
#include "nahm/errors.hpp"
#include "nahm/liealg.hpp"
#include "nahm/search.hpp"

namespace nahm {

namespace {

using Checks = std::vector<CheckResult>;

std::string join(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + ")";
}

void add(Checks& out, const std::string& suite, const std::string& name, bool ok, std::string detail = {}) {
  out.push_back({suite, name, ok, std::move(detail)});
}

// Runs fn and records an exception as a failure.
void guarded(Checks& out, const std::string& suite, const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    add(out, suite, name, false, e.what());
  }
}

bool has_prefix(const PuiseuxSeries& s, const Rational& lead, const std::vector<int>& coeffs) {
  if (s.leading_exponent() != lead) return false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (s.coefficient(lead + static_cast<long>(i)) != coeffs[i]) return false;
  }
  return true;
}

void characters_suite(Checks& out) {
  const std::string s = "characters";
  guarded(out, s, "minimal (5,2) printed expansions", [&] {
    const bool ok = has_prefix(minimal_character(5, 2, 10), make_rational(-1, 60), {1, 1, 1, 1, 2, 2, 3}) &&
                    has_prefix(minimal_character(5, 1, 10), make_rational(11, 60), {1, 0, 1, 1, 1, 1, 2});
    add(out, s, "minimal (5,2) printed expansions", ok);
  });
  guarded(out, s, "coset k=2 printed expansions", [&] {
    const bool ok = has_prefix(coset_character(2, 0, 0, 10), make_rational(-1, 48), {1, 0, 1, 1, 2, 2, 3, 3, 5, 5, 7}) &&
                    has_prefix(coset_character(2, 1, 1, 10), make_rational(1, 24), {1, 1, 1, 2, 2, 3, 4, 5, 6, 8});
    add(out, s, "coset k=2 printed expansions", ok);
  });
  for (int k = 1; k <= 6; ++k) {
    const std::string name = "recomposition k=" + std::to_string(k);
    guarded(out, s, name, [&] {
      bool ok = true;
      for (int l = 0; l <= k; ++l) {
        std::optional<TwoVarSeries> sum;
        for (int m = -k + 1; m <= k; ++m) {
          if ((l + m) % 2 != 0) continue;
          TwoVarSeries term = coset_character(k, l, m, 12) * u1_character(k, m, 12);
          sum = sum ? *sum + term : term;
        }
        ok = ok && agree(affine_su2_character(k, l, 10), *sum);
      }
      add(out, s, name, ok);
    });
  }
}

void asymptotics_suite(Checks& out) {
  const std::string s = "asymptotics";
  PrecisionConfig precision;
  const PrecisionScope scope(static_cast<unsigned>(precision.working_digits));
  struct Case {
    MatrixQ a;
    std::vector<Rational> b;
    Rational c;
  };
  const MatrixQ k4 = coset_family_matrix(4);
  const std::vector<Case> cases{
      {MatrixQ{{Rational(2)}}, {Rational(0)}, make_rational(-1, 60)},
      {MatrixQ{{Rational(2)}}, {Rational(1)}, make_rational(11, 60)},
      {MatrixQ{{Rational(1)}}, {Rational(0)}, make_rational(-1, 48)},
      {MatrixQ{{Rational(1)}}, {make_rational(-1, 2)}, make_rational(1, 24)},
      {k4, {make_rational(-1, 4), make_rational(-1, 2), make_rational(-3, 4)}, make_rational(1, 48)},
      {k4, {make_rational(-1, 2), Rational(-1), make_rational(-1, 2)}, make_rational(1, 24)},
      {k4, {Rational(0), Rational(0), Rational(0)}, make_rational(-1, 24)},
  };
  for (const auto& c : cases) {
    const std::string name = "C and residual for B=" + join(c.b);
    guarded(out, s, name, [&] {
      const TBASolution sol = solve_tba(c.a, precision);
      const ScreenResult r = screen_candidate(c.a, c.b, sol, ScreenConfig{}, precision);
      add(out, s, name, r.pass && r.C == c.c,
          "C=" + (r.C ? to_string(*r.C) : std::string("none")) + " residual=" + to_short_string(abs(r.residual)));
    });
  }
}

void dilog_suite(Checks& out) {
  const std::string s = "dilog";
  PrecisionConfig precision;
  const PrecisionScope scope(static_cast<unsigned>(precision.working_digits));
  for (const auto family : {DynkinFamily::T, DynkinFamily::A}) {
    for (int n = 1; n <= 8; ++n) {
      const DynkinSpec x(DynkinFamily::A, 1);
      const DynkinSpec y(family, n);
      const std::string name = "c_eff (A1," + y.name() + ")";
      guarded(out, s, name, [&] {
        const TBASolution sol = solve_tba(nahm_matrix(x, y), precision);
        const Real gap = abs(dilog_ceff(sol.x) - to_real(effective_central_charge(x, y)));
        add(out, s, name, gap <= pow10_neg(30), "gap=" + to_short_string(gap));
      });
    }
  }
}

SearchConfig grid(SearchFamily family, int lo, int hi, std::vector<int> dens, unsigned jobs) {
  SearchConfig cfg;
  cfg.family = std::move(family);
  cfg.range = SearchRange{Rational(lo), Rational(hi)};
  cfg.denominators = std::move(dens);
  cfg.jobs = jobs;
  return cfg;
}

// Every expected B is found; with `exact`, nothing else is.
void expect_records(Checks& out, const std::string& suite, const std::string& name, const SearchConfig& cfg,
                    const std::vector<std::vector<Rational>>& expected, bool exact) {
  guarded(out, suite, name, [&] {
    const SearchResult res = run_search(cfg);
    std::vector<std::vector<Rational>> found;
    for (const auto& r : res.records) found.push_back(r.B);
    bool ok = std::all_of(expected.begin(), expected.end(), [&](const auto& b) {
      return std::find(found.begin(), found.end(), b) != found.end();
    });
    if (exact) ok = ok && found.size() == expected.size();
    add(out, suite, name, ok, std::to_string(found.size()) + " records");
  });
}

void minimal_suite(Checks& out, unsigned jobs) {
  expect_records(out, "minimal", "n=1 on [-5,5]", grid(MinimalFamily{1}, -5, 5, {1}, jobs), known_B_minimal(1), true);
  for (int n : {2, 3}) {
    expect_records(out, "minimal", "n=" + std::to_string(n) + " on [-3,3]", grid(MinimalFamily{n}, -3, 3, {1}, jobs),
                   known_B_minimal(n), true);
  }
}

void coset_suite(Checks& out, unsigned jobs) {
  expect_records(out, "coset", "k=2 over {1,2}", grid(CosetFamily{2}, -2, 2, {1, 2}, jobs), known_B_coset(2), true);
  expect_records(out, "coset", "k=3 over {1,2,3}", grid(CosetFamily{3}, -2, 2, {1, 2, 3}, jobs), known_B_coset(3), true);
  expect_records(out, "coset", "k=4 over {1,2,4}", grid(CosetFamily{4}, -2, 2, {1, 2, 4}, jobs), known_B_coset(4), false);
  expect_records(out, "coset", "k=5 over {1..5}", grid(CosetFamily{5}, -2, 2, {1, 2, 3, 4, 5}, jobs), known_B_coset(5),
                 true);
}

void families_suite(Checks& out) {
  for (const auto variant : {FamilyVariant::Even, FamilyVariant::Odd}) {
    for (int j = -2; j <= 2; ++j) {
      const std::string name =
          std::string(variant == FamilyVariant::Even ? "even" : "odd") + " j=" + std::to_string(j);
      guarded(out, "families", name, [&] {
        const FamilyIdentity id = infinite_family_identity(j, variant, 15);
        add(out, "families", name, id.equal, "B=" + join(id.B) + " C=" + to_string(id.C));
      });
    }
  }
}

void duality_suite(Checks& out) {
  const std::string s = "duality";
  guarded(out, s, "self-dual point A=(1), B=(0), C=-1/48", [&] {
    const NahmDatum d{MatrixQ{{Rational(1)}}, {Rational(0)}, make_rational(-1, 48)};
    const NahmDatum dual = dual_transform(d);
    add(out, s, "self-dual point A=(1), B=(0), C=-1/48", dual.A == d.A && dual.B == d.B && dual.C == d.C);
  });
  for (int k = 2; k <= 6; ++k) {
    const std::string name = "coset k=" + std::to_string(k) + " dual columns";
    guarded(out, s, name, [&] {
      const MatrixQ a = coset_family_matrix(k);
      const auto known = known_B_coset(k);
      bool ok = true;
      for (std::size_t j = 1; j < known.size(); ++j) {
        const NahmDatum dual = dual_transform(NahmDatum{a, known[j], Rational(0)});
        for (std::size_t i = 0; i < dual.B.size(); ++i) {
          ok = ok && dual.B[i] == (i + 1 == j ? make_rational(-1, 2) : Rational(0));
        }
      }
      add(out, s, name, ok);
    });
  }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"characters", "asymptotics", "dilog",  "minimal",
                                               "coset",      "families",    "duality"};
  return suites;
}

std::vector<CheckResult> run_verify(const std::string& suite, unsigned jobs) {
  const auto& known = verify_suites();
  if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end()) {
    throw InputError("unknown verify suite '" + suite + "'");
  }
  Checks out;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("characters")) characters_suite(out);
  if (want("asymptotics")) asymptotics_suite(out);
  if (want("dilog")) dilog_suite(out);
  if (want("minimal")) minimal_suite(out, jobs);
  if (want("coset")) coset_suite(out, jobs);
  if (want("families")) families_suite(out);
  if (want("duality")) duality_suite(out);
  return out;
}

}  // namespace nahm
