#pragma once

#include <string>

#include "nahm/matrix.hpp"

namespace nahm {

enum class DynkinFamily { A, T };

// A_r or the tadpole T_r.
struct DynkinSpec {
  DynkinFamily family;
  int rank;

  DynkinSpec(DynkinFamily f, int r);
  int dual_coxeter() const noexcept { return family == DynkinFamily::A ? rank + 1 : 2 * rank + 1; }
  std::string name() const;
};

MatrixQ cartan_matrix(const DynkinSpec& spec);

// C(X) (x) C(Y)^-1.
MatrixQ nahm_matrix(const DynkinSpec& x, const DynkinSpec& y);

// r(X) r(Y) h(X) / (h(X) + h(Y)).
Rational effective_central_charge(const DynkinSpec& x, const DynkinSpec& y);

// The two families searched: (A1, T_n) and the coset family (A1, A_{k-1}).
MatrixQ minimal_family_matrix(int n);
MatrixQ coset_family_matrix(int k);

}  // namespace nahm
