#include "nahm/real.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <utility>

#include "nahm/errors.hpp"

namespace nahm {

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_real(const Rational& value) {
  Real out;
  mpfr_set_q(out.backend().data(), value.get_mpq_t(), MPFR_RNDN);
  return out;
}

std::string to_decimal_string(const Real& value, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << value;
  return os.str();
}

std::string to_short_string(const Real& value) {
  if (value == 0) return "0";
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << value;
  return os.str();
}

Real pi() {
  Real out;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

Real rogers_dilog(const Real& y) {
  Real li2;
  mpfr_li2(li2.backend().data(), y.backend().data(), MPFR_RNDN);
  return li2 + log(y) * log(Real(1) - y) / 2;
}

Real pow10_neg(int exponent) { return pow(Real(10), -exponent); }

RealMatrix invert(const RealMatrix& m) {
  const std::size_t n = m.size();
  RealMatrix a = m;
  RealMatrix inv(n, std::vector<Real>(n, Real(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

  // Singularity threshold relative to the largest entry.
  Real scale = 0;
  for (const auto& row : a) {
    for (const auto& v : row) scale = std::max<Real>(scale, abs(v));
  }
  const Real eps = scale * pow(Real(10), -static_cast<int>(Real::default_precision()) + 5);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    }
    if (abs(a[pivot][col]) <= eps) throw SingularMatrixError("matrix is singular to working precision");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Real p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Real f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace nahm
