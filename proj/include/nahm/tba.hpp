#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "nahm/matrix.hpp"
#include "nahm/qseries.hpp"
#include "nahm/real.hpp"

namespace nahm {

struct PrecisionConfig {
  int working_digits = 60;
  double solver_tol = 1e-50;
  long max_iterations = 100000;
  // Newton steps on the log form after the fixed-point phase.
  bool newton_polish = true;

  void validate() const;
};

struct XSolution {
  std::vector<Real> x;
  Real residual;
  long iterations = 0;
};

struct TBASolution {
  std::vector<Real> x;
  RealMatrix F;
  Real residual;
  long iterations = 0;
};

// max_i |x_i - prod_j (1 - x_j)^A_ij|
Real xeqns_residual(const MatrixQ& a, const std::vector<Real>& x);

// Solution of x_i = prod_j (1 - x_j)^A_ij in (0,1)^r by damped fixed-point
// iteration from x = 1/2. Throws ConvergenceError after max_iterations.
// Runs at the current default precision; callers hold a PrecisionScope.
XSolution solve_x(const MatrixQ& a, const PrecisionConfig& cfg);

// F = (A^-1 + diag(x/(1-x)))^-1
RealMatrix f_matrix(const MatrixQ& a, const std::vector<Real>& x);

TBASolution solve_tba(const MatrixQ& a, const PrecisionConfig& cfg);

// (6/pi^2) sum_i L(x_i) with L the Rogers dilogarithm.
Real dilog_ceff(const std::vector<Real>& x);

// Tolerances are decimal exponents; unset means working_digits / 2.
struct ScreenConfig {
  std::optional<int> filter_tol_digits;
  std::optional<int> recon_tol_digits;
  long max_denominator = 10000;

  int filter_digits(const PrecisionConfig& p) const { return filter_tol_digits.value_or(p.working_digits / 2); }
  int recon_digits(const PrecisionConfig& p) const { return recon_tol_digits.value_or(p.working_digits / 2); }
};

struct AsymptoticC {
  Real value;
  std::optional<Rational> rational;
};

// The C predicted by the q -> 1 expansion for a given B.
Real asymptotic_c_value(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol);
AsymptoticC asymptotic_C(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol,
                         const ScreenConfig& screen, const PrecisionConfig& precision);

// Second-order coefficient of the expansion; vanishes for B that can give a
// modular sum.
Real asymptotic_residual(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol);

// Both expressions as polynomials in t_i = b_i - 1/2 (degree 2 and 3).
// Evaluating them is O(r^3) instead of O(r^4) per B, which is what makes
// large candidate grids affordable.
class AsymptoticPolynomials {
 public:
  explicit AsymptoticPolynomials(const TBASolution& sol);

  std::size_t rank() const noexcept { return rank_; }
  Real c_value(const std::vector<Real>& t) const;
  Real residual(const std::vector<Real>& t) const;
  // Double evaluation. `magnitude` receives the sum of absolute term values,
  // a scale for the rounding error of the result.
  double residual_double(const double* t, double* magnitude) const;

 private:
  struct Cubic {
    Real c0;
    std::vector<Real> c1, c2, c3;  // dense, indices sorted i <= j <= k
  };
  Real evaluate(const Cubic& p, const std::vector<Real>& t) const;

  std::size_t rank_;
  Cubic c_poly_;
  Cubic residual_poly_;
  // Residual coefficients as doubles, upper-triangular entries only.
  double d0_ = 0;
  std::vector<std::pair<int, double>> d1_;
  std::vector<std::tuple<int, int, double>> d2_;
  std::vector<std::tuple<int, int, int, double>> d3_;
};

}  // namespace nahm
