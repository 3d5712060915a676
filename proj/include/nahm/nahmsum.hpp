#pragma once

#include <vector>

#include "nahm/matrix.hpp"
#include "nahm/qseries.hpp"

namespace nahm {

inline constexpr int kDefaultOrder = 20;

// (A, B, C) of the sum  sum_{n >= 0} q^(n.A.n/2 + B.n + C) / ((q)_{n_1} ... (q)_{n_r}).
struct NahmDatum {
  MatrixQ A;
  std::vector<Rational> B;
  Rational C;

  std::size_t rank() const noexcept { return A.rows(); }
  // Throws InputError on shape problems, NotPositiveDefiniteError otherwise.
  void validate() const;
};

// Exact truncation of the Nahm sum, known from its leading exponent through
// `order` further powers of q. Negative B entries are allowed; the offset is
// the true minimum of n.A.n/2 + B.n + C over the lattice.
PuiseuxSeries nahm_sum(const NahmDatum& datum, int order = kDefaultOrder);

// Floating lower bound on the smallest eigenvalue of a symmetric matrix,
// already multiplied by the 0.9 safety factor. Used only to size the
// enumeration ball.
double min_eigenvalue_bound(const MatrixQ& a);

}  // namespace nahm
