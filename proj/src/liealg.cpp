#include "nahm/liealg.hpp"

#include "nahm/errors.hpp"

namespace nahm {

DynkinSpec::DynkinSpec(DynkinFamily f, int r) : family(f), rank(r) {
  if (rank < 1) throw InputError("Dynkin rank must be at least 1");
}

std::string DynkinSpec::name() const { return (family == DynkinFamily::A ? "A" : "T") + std::to_string(rank); }

MatrixQ cartan_matrix(const DynkinSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.rank);
  MatrixQ c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = 2;
    if (i + 1 < n) {
      c(i, i + 1) = -1;
      c(i + 1, i) = -1;
    }
  }
  if (spec.family == DynkinFamily::T) c(n - 1, n - 1) = 1;
  return c;
}

MatrixQ nahm_matrix(const DynkinSpec& x, const DynkinSpec& y) {
  return kronecker(cartan_matrix(x), invert(cartan_matrix(y)));
}

Rational effective_central_charge(const DynkinSpec& x, const DynkinSpec& y) {
  Rational c(x.rank * y.rank * x.dual_coxeter(), x.dual_coxeter() + y.dual_coxeter());
  c.canonicalize();
  return c;
}

MatrixQ minimal_family_matrix(int n) {
  return nahm_matrix(DynkinSpec(DynkinFamily::A, 1), DynkinSpec(DynkinFamily::T, n));
}

MatrixQ coset_family_matrix(int k) {
  if (k < 2) throw InputError("coset family needs k >= 2");
  return nahm_matrix(DynkinSpec(DynkinFamily::A, 1), DynkinSpec(DynkinFamily::A, k - 1));
}

}  // namespace nahm
