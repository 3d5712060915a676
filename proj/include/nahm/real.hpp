#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "nahm/rational.hpp"

namespace nahm {

// Arbitrary precision binary float. The precision of newly created values is
// process wide (boost keeps one default), see PrecisionScope.
using Real = boost::multiprecision::mpfr_float;

// Sets the default decimal precision for its lifetime and restores the old
// value afterwards. Not safe to create concurrently from several threads;
// set it once before fanning out.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rational& value);

// Decimal rendering with `digits` significant digits in scientific notation
// when the magnitude calls for it.
std::string to_decimal_string(const Real& value, int digits);

// Short form for tolerances and residuals, e.g. "3.1e-41".
std::string to_short_string(const Real& value);

Real pi();

// Rogers dilogarithm L(y) = Li2(y) + log(y) log(1 - y) / 2 for 0 < y < 1.
Real rogers_dilog(const Real& y);

// 10^-exponent at current precision.
Real pow10_neg(int exponent);

using RealMatrix = std::vector<std::vector<Real>>;

// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrixError when
// a pivot falls below the working precision.
RealMatrix invert(const RealMatrix& m);

}  // namespace nahm
