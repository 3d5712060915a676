#include "nahm/tba.hpp"

#include <algorithm>

#include "nahm/errors.hpp"

namespace nahm {

void PrecisionConfig::validate() const {
  if (working_digits < 30) throw InputError("working_digits must be at least 30");
  if (!(solver_tol > 0)) throw InputError("solver_tol must be positive");
  if (max_iterations <= 0) throw InputError("max_iterations must be positive");
}

namespace {

std::vector<Real> image(const MatrixQ& a, const std::vector<Real>& x) {
  const std::size_t r = x.size();
  std::vector<Real> logs(r);
  for (std::size_t j = 0; j < r; ++j) logs[j] = log1p(-x[j]);
  std::vector<Real> g(r);
  for (std::size_t i = 0; i < r; ++i) {
    Real s = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (a(i, j) != 0) s += to_real(a(i, j)) * logs[j];
    }
    g[i] = exp(s);
  }
  return g;
}

Real max_gap(const std::vector<Real>& x, const std::vector<Real>& g) {
  Real m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max<Real>(m, abs(x[i] - g[i]));
  return m;
}

bool inside_unit_cube(const std::vector<Real>& x) {
  return std::all_of(x.begin(), x.end(), [](const Real& v) { return v > 0 && v < 1; });
}

// Newton on G_i = log x_i - sum_j A_ij log(1 - x_j).
bool newton_polish(const MatrixQ& a, std::vector<Real>& x, const Real& tol, long& iterations) {
  const std::size_t r = x.size();
  for (int step = 0; step < 200; ++step) {
    if (xeqns_residual(a, x) <= tol) return true;
    std::vector<Real> g(r);
    RealMatrix jac(r, std::vector<Real>(r, Real(0)));
    for (std::size_t i = 0; i < r; ++i) {
      g[i] = log(x[i]);
      for (std::size_t j = 0; j < r; ++j) {
        if (a(i, j) == 0) continue;
        const Real aij = to_real(a(i, j));
        g[i] -= aij * log1p(-x[j]);
        jac[i][j] += aij / (1 - x[j]);
      }
      jac[i][i] += 1 / x[i];
    }
    const RealMatrix inv = invert(jac);
    std::vector<Real> delta(r, Real(0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) delta[i] -= inv[i][j] * g[j];
    }
    Real scale = 1;
    std::vector<Real> next(r);
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t i = 0; i < r; ++i) next[i] = x[i] + scale * delta[i];
      if (inside_unit_cube(next)) break;
      scale /= 2;
    }
    if (!inside_unit_cube(next)) return false;
    x.swap(next);
    ++iterations;
  }
  return xeqns_residual(a, x) <= tol;
}

}  // namespace

Real xeqns_residual(const MatrixQ& a, const std::vector<Real>& x) { return max_gap(x, image(a, x)); }

XSolution solve_x(const MatrixQ& a, const PrecisionConfig& cfg) {
  cfg.validate();
  if (!a.is_square() || a.rows() == 0) throw InputError("A must be a nonempty square matrix");
  const std::size_t r = a.rows();
  const Real tol = Real(cfg.solver_tol);
  // With polishing the fixed-point phase only needs to land in Newton's basin.
  const Real phase_tol = cfg.newton_polish ? std::max<Real>(tol, Real(1e-15)) : tol;

  std::vector<Real> x(r, Real(0.5));
  Real theta = 0.5;
  Real previous = xeqns_residual(a, x);
  long it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const std::vector<Real> g = image(a, x);
    const Real res = max_gap(x, g);
    if (res <= phase_tol) break;
    if (res > previous) theta /= 2;
    previous = res;
    std::vector<Real> next(r);
    for (int guard = 0; guard < 60; ++guard) {
      for (std::size_t i = 0; i < r; ++i) next[i] = (1 - theta) * x[i] + theta * g[i];
      if (inside_unit_cube(next)) break;
      theta /= 2;
    }
    x.swap(next);
  }
  if (cfg.newton_polish && it < cfg.max_iterations) {
    newton_polish(a, x, tol, it);
  }
  const Real residual = xeqns_residual(a, x);
  if (!(residual <= tol) || !inside_unit_cube(x)) {
    throw ConvergenceError("x-equations did not converge after " + std::to_string(it) + " iterations",
                           to_short_string(residual));
  }
  return XSolution{std::move(x), residual, it};
}

RealMatrix f_matrix(const MatrixQ& a, const std::vector<Real>& x) {
  const MatrixQ a_inv = invert(a);
  const std::size_t r = x.size();
  RealMatrix m(r, std::vector<Real>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) m[i][j] = to_real(a_inv(i, j));
    m[i][i] += x[i] / (1 - x[i]);
  }
  return invert(m);
}

TBASolution solve_tba(const MatrixQ& a, const PrecisionConfig& cfg) {
  XSolution xs = solve_x(a, cfg);
  RealMatrix f = f_matrix(a, xs.x);
  return TBASolution{std::move(xs.x), std::move(f), xs.residual, xs.iterations};
}

Real dilog_ceff(const std::vector<Real>& x) {
  Real s = 0;
  for (const auto& v : x) s += rogers_dilog(v);
  const Real p = pi();
  return 6 * s / (p * p);
}

}  // namespace nahm
