#include <doctest.h>

#include "nahm/errors.hpp"
#include "nahm/liealg.hpp"
#include "nahm/tba.hpp"

using namespace nahm;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

const DynkinSpec A1{DynkinFamily::A, 1};

bool close(const Real& a, const Real& b, int digits) { return abs(a - b) <= pow10_neg(digits); }

struct Case {
  MatrixQ a;
  std::vector<Rational> b;
  Rational c;
};

std::vector<Case> known_cases() {
  const MatrixQ k4 = coset_family_matrix(4);
  return {
      {MatrixQ{{R(2)}}, {R(0)}, R(-1, 60)},
      {MatrixQ{{R(2)}}, {R(1)}, R(11, 60)},
      {MatrixQ{{R(1)}}, {R(-1, 2)}, R(1, 24)},
      {MatrixQ{{R(1)}}, {R(0)}, R(-1, 48)},
      {k4, {R(0), R(0), R(0)}, R(-1, 24)},
      {k4, {R(-1, 2), R(-1), R(-1, 2)}, R(1, 24)},
      {k4, {R(-1, 4), R(-1, 2), R(-3, 4)}, R(1, 48)},
      {k4, {R(1, 2), R(0), R(-1, 2)}, R(1, 24)},
  };
}

}  // namespace

TEST_CASE("x-equations") {
  PrecisionScope scope(60);
  const PrecisionConfig cfg;
  const XSolution one = solve_x(MatrixQ{{R(1)}}, cfg);
  CHECK(close(one.x[0], Real(1) / 2, 50));
  const XSolution two = solve_x(MatrixQ{{R(2)}}, cfg);
  CHECK(close(two.x[0], (3 - sqrt(Real(5))) / 2, 50));
  CHECK(two.residual <= pow10_neg(50));

  const XSolution k4 = solve_x(coset_family_matrix(4), cfg);
  CHECK(k4.residual <= pow10_neg(50));
  CHECK(close(k4.x[0], Real(1) / 3, 50));
  CHECK(close(k4.x[1], Real(1) / 4, 50));
  CHECK(close(k4.x[2], Real(1) / 3, 50));
}

TEST_CASE("fixed point alone converges for the family matrices") {
  PrecisionScope scope(40);
  PrecisionConfig cfg;
  cfg.working_digits = 40;
  cfg.solver_tol = 1e-30;
  cfg.newton_polish = false;
  for (int n = 1; n <= 12; ++n) {
    for (const MatrixQ& a : {minimal_family_matrix(n), coset_family_matrix(n + 1)}) {
      const XSolution s = solve_x(a, cfg);
      CHECK(s.residual <= pow10_neg(30));
      for (const Real& v : s.x) CHECK((v > 0 && v < 1));
    }
  }
}

TEST_CASE("solver configuration and failure") {
  PrecisionConfig bad;
  bad.working_digits = 10;
  CHECK_THROWS_AS(bad.validate(), InputError);
  PrecisionScope scope(60);
  PrecisionConfig tight;
  tight.max_iterations = 2;
  tight.newton_polish = false;
  CHECK_THROWS_AS(solve_x(coset_family_matrix(6), tight), ConvergenceError);
}

TEST_CASE("F matrix") {
  PrecisionScope scope(60);
  const PrecisionConfig cfg;
  CHECK(close(solve_tba(MatrixQ{{R(1)}}, cfg).F[0][0], Real(1) / 2, 50));
  CHECK(close(solve_tba(MatrixQ{{R(2)}}, cfg).F[0][0], 2 / sqrt(Real(5)), 50));
  const TBASolution s = solve_tba(coset_family_matrix(4), cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(close(s.F[i][j], s.F[j][i], 40));
  }
}

TEST_CASE("dilogarithm central charge") {
  PrecisionScope scope(60);
  const PrecisionConfig cfg;
  CHECK(close(dilog_ceff({Real(1) / 2}), Real(1) / 2, 50));
  CHECK(close(rogers_dilog(Real(1) / 2), pi() * pi() / 12, 50));
  CHECK(close(rogers_dilog((3 - sqrt(Real(5))) / 2), pi() * pi() / 15, 50));
  for (int n = 1; n <= 8; ++n) {
    for (const DynkinSpec& y : {DynkinSpec(DynkinFamily::T, n), DynkinSpec(DynkinFamily::A, n)}) {
      const TBASolution s = solve_tba(nahm_matrix(A1, y), cfg);
      CHECK(close(dilog_ceff(s.x), to_real(effective_central_charge(A1, y)), 30));
    }
  }
}

TEST_CASE("asymptotic C and residual") {
  PrecisionScope scope(60);
  const PrecisionConfig cfg;
  const ScreenConfig screen;
  for (const Case& c : known_cases()) {
    const TBASolution s = solve_tba(c.a, cfg);
    const AsymptoticC got = asymptotic_C(c.a, c.b, s, screen, cfg);
    REQUIRE(got.rational.has_value());
    CHECK(*got.rational == c.c);
    CHECK(abs(asymptotic_residual(c.a, c.b, s)) <= pow10_neg(40));
  }
  const TBASolution s2 = solve_tba(MatrixQ{{R(2)}}, cfg);
  CHECK(abs(asymptotic_residual(MatrixQ{{R(2)}}, {R(1, 3)}, s2)) > pow10_neg(10));
  const MatrixQ k4 = coset_family_matrix(4);
  CHECK(abs(asymptotic_residual(k4, {R(1), R(0), R(0)}, solve_tba(k4, cfg))) > pow10_neg(10));
}

TEST_CASE("asymptotic C is stable under doubled precision") {
  std::vector<Real> at60;
  {
    PrecisionScope scope(60);
    const PrecisionConfig cfg;
    for (const Case& c : known_cases()) at60.push_back(asymptotic_c_value(c.a, c.b, solve_tba(c.a, cfg)));
  }
  PrecisionScope scope(120);
  PrecisionConfig cfg;
  cfg.working_digits = 120;
  cfg.solver_tol = 1e-110;
  std::size_t i = 0;
  for (const Case& c : known_cases()) {
    CHECK(close(asymptotic_c_value(c.a, c.b, solve_tba(c.a, cfg)), at60[i++], 30));
  }
}

TEST_CASE("polynomial form matches direct evaluation") {
  PrecisionScope scope(60);
  const PrecisionConfig cfg;
  for (const MatrixQ& a : {MatrixQ{{R(2)}}, minimal_family_matrix(3), coset_family_matrix(4), coset_family_matrix(5)}) {
    const TBASolution s = solve_tba(a, cfg);
    const AsymptoticPolynomials poly(s);
    const std::size_t r = a.rows();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Rational> b(r);
      std::vector<Real> t(r);
      std::vector<double> td(r);
      for (std::size_t i = 0; i < r; ++i) {
        b[i] = make_rational(static_cast<long>((trial * 7 + 3 * i) % 9) - 4, 2 + trial % 3);
        t[i] = to_real(b[i]) - Real(1) / 2;
        td[i] = t[i].convert_to<double>();
      }
      CHECK(close(poly.c_value(t), asymptotic_c_value(a, b, s), 45));
      const Real direct = asymptotic_residual(a, b, s);
      CHECK(close(poly.residual(t), direct, 45));
      double mag = 0;
      const double approx = poly.residual_double(td.data(), &mag);
      CHECK(std::abs(approx - direct.convert_to<double>()) <= 1e-12 * std::max(1.0, mag));
    }
  }
}
