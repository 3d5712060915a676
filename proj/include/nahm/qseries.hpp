#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nahm/rational.hpp"
#include "nahm/real.hpp"

namespace nahm {

// Truncated series  sum_i c_i q^(offset + i/N),  i = 0..T,  with exact
// rational coefficients. Coefficients above offset + T/N are unknown; those
// below offset are zero. The offset is always a multiple of 1/N.
class PuiseuxSeries {
 public:
  PuiseuxSeries(std::int64_t lattice_den, Rational offset, std::vector<Rational> coeffs);

  // Coefficients at integer steps offset, offset + 1, ... known through the
  // last entry. The lattice is refined to carry the offset.
  static PuiseuxSeries from_integer_steps(const Rational& offset, const std::vector<Rational>& coeffs);

  // Sparse construction: exponent/coefficient pairs, known on [start, top].
  // Terms above top are dropped; a term below start is an error.
  static PuiseuxSeries from_terms(const std::vector<std::pair<Rational, Rational>>& terms, const Rational& start,
                                  const Rational& top);

  static PuiseuxSeries monomial(const Rational& exponent, const Rational& coeff, const Rational& top);

  std::int64_t lattice_den() const noexcept { return lattice_den_; }
  const Rational& offset() const noexcept { return offset_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  // Truncation order T in lattice steps.
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  Rational exponent_at(std::int64_t index) const;
  Rational known_top() const { return exponent_at(order()); }

  // Coefficient of q^exponent; zero below the offset or off the lattice.
  // Throws TruncationError above known_top().
  Rational coefficient(const Rational& exponent) const;

  std::optional<Rational> leading_exponent() const;
  std::optional<std::int64_t> leading_index() const;
  bool is_zero() const;

  PuiseuxSeries rescaled(std::int64_t new_lattice_den) const;
  PuiseuxSeries truncated(const Rational& top) const;
  // Drops leading zero coefficients so that offset is the leading exponent.
  PuiseuxSeries trimmed() const;
  // Coarsest lattice that still represents every known coefficient.
  PuiseuxSeries compacted() const;
  PuiseuxSeries shifted(const Rational& exponent) const;
  PuiseuxSeries scaled(const Rational& factor) const;
  PuiseuxSeries inverse() const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);

 private:
  std::int64_t lattice_den_;
  Rational offset_;
  std::vector<Rational> coeffs_;
};

// True when the two series have equal coefficients at every exponent up to
// the smaller of their known tops.
bool agree(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Same, but through an explicit exponent. Throws TruncationError if either
// series is not known that far.
bool agree_through(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rational& top);

// prod_{j=1}^n (1 - q^j), known through q^order.
PuiseuxSeries pochhammer(int n, int order);

// 1 / (q)_n through q^order, integer steps. Shared by the Nahm sum enumerator.
std::vector<std::int64_t> inverse_pochhammer_coefficients(int n, int order);

// q^(1/24) prod (1 - q^n), known through q^(1/24 + order).
PuiseuxSeries dedekind_eta(int order);

// sum_{j in Z} q^(a (j + b)^2), known through (leading exponent + order).
PuiseuxSeries theta_lattice(const Rational& a, const Rational& b, int order);

// Continued fraction convergents of x in order; returns the first p/q with
// q <= max_denominator and |x - p/q| <= tol.
std::optional<Rational> rational_reconstruct(const Real& x, const Integer& max_denominator, const Real& tol);

}  // namespace nahm
