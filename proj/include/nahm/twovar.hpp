#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nahm/qseries.hpp"

namespace nahm {

// Laurent polynomial in z with exponents in Z/2, keyed by twice the exponent.
using LaurentZ = std::map<int, Rational>;

void add_scaled(LaurentZ& dst, const LaurentZ& src, const Rational& factor, int twice_shift = 0);
LaurentZ multiply(const LaurentZ& a, const LaurentZ& b);

// Exact quotient p / (z^(1/2) - z^(-1/2)). Throws DivisionError on remainder.
LaurentZ divide_by_z_half_difference(const LaurentZ& p);

// Same q-lattice structure as PuiseuxSeries, with a LaurentZ per q-order.
class TwoVarSeries {
 public:
  TwoVarSeries(std::int64_t lattice_den, Rational offset, std::vector<LaurentZ> coeffs);

  std::int64_t lattice_den() const noexcept { return lattice_den_; }
  const Rational& offset() const noexcept { return offset_; }
  const std::vector<LaurentZ>& coefficients() const noexcept { return coeffs_; }
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  Rational exponent_at(std::int64_t index) const;
  Rational known_top() const { return exponent_at(order()); }

  // Coefficient of z^(twice_exponent/2) as a q-series on this lattice.
  PuiseuxSeries z_coefficient(int twice_exponent) const;
  // z-polynomial multiplying q^exponent. Throws TruncationError above the top.
  LaurentZ q_coefficient(const Rational& exponent) const;

  TwoVarSeries rescaled(std::int64_t new_lattice_den) const;
  // z -> 1/z.
  TwoVarSeries reflected() const;

  friend TwoVarSeries operator+(const TwoVarSeries& a, const TwoVarSeries& b);
  friend TwoVarSeries operator*(const PuiseuxSeries& a, const TwoVarSeries& b);

 private:
  std::int64_t lattice_den_;
  Rational offset_;
  std::vector<LaurentZ> coeffs_;
};

// Coefficientwise equality in q and z up to the smaller known top.
bool agree(const TwoVarSeries& a, const TwoVarSeries& b);

}  // namespace nahm
