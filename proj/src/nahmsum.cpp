#include "nahm/nahmsum.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include <Eigen/Eigenvalues>

#include "nahm/errors.hpp"

namespace nahm {

void NahmDatum::validate() const {
  if (!A.is_square() || A.rows() == 0) throw InputError("A must be a nonempty square matrix");
  if (B.size() != A.rows()) throw InputError("B has length " + std::to_string(B.size()) + ", expected " + std::to_string(A.rows()));
  if (!A.is_symmetric()) throw InputError("A must be symmetric");
  if (!is_positive_definite(A)) throw NotPositiveDefiniteError("A is not positive definite");
}

double min_eigenvalue_bound(const MatrixQ& a) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j).get_d();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return 0.9 * solver.eigenvalues().minCoeff();
}

namespace {

// Exponents scaled by a common denominator so that n.A.n/2 + B.n is an integer.
struct ScaledForm {
  std::int64_t den = 1;
  std::vector<std::vector<std::int64_t>> quad;  // upper triangle incl. diagonal
  std::vector<std::int64_t> lin;
};

ScaledForm scale_form(const NahmDatum& d) {
  const std::size_t r = d.rank();
  Integer den = 1;
  for (std::size_t i = 0; i < r; ++i) {
    den = lcm(den, Rational(d.A(i, i) / 2).get_den());
    for (std::size_t j = i + 1; j < r; ++j) den = lcm(den, d.A(i, j).get_den());
    den = lcm(den, d.B[i].get_den());
  }
  ScaledForm f;
  f.den = to_int64(den);
  const Rational dq(den);
  f.quad.assign(r, std::vector<std::int64_t>(r, 0));
  f.lin.assign(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    f.quad[i][i] = to_int64(Rational(d.A(i, i) / 2 * dq).get_num());
    for (std::size_t j = i + 1; j < r; ++j) f.quad[i][j] = to_int64(Rational(d.A(i, j) * dq).get_num());
    f.lin[i] = to_int64(Rational(d.B[i] * dq).get_num());
  }
  return f;
}

class LatticeWalker {
 public:
  LatticeWalker(const ScaledForm& form, double lambda, double norm_b) : form_(form), lambda_(lambda), norm_b_(norm_b) {}

  // Visits every n >= 0 with scaled exponent <= max_scaled.
  void walk(std::int64_t max_scaled, const std::function<void(const std::vector<int>&, std::int64_t)>& visit) {
    const double e = static_cast<double>(max_scaled) / static_cast<double>(form_.den);
    const double disc = norm_b_ * norm_b_ + 2.0 * lambda_ * e;
    if (disc < 0) return;
    const double radius = (norm_b_ + std::sqrt(disc)) / lambda_ + 1e-9;
    radius_sq_ = radius * radius;
    max_scaled_ = max_scaled;
    visit_ = &visit;
    n_.assign(form_.lin.size(), 0);
    descend(0, 0, 0.0);
  }

 private:
  void descend(std::size_t depth, std::int64_t partial, double norm_sq) {
    if (depth == n_.size()) {
      if (partial <= max_scaled_) (*visit_)(n_, partial);
      return;
    }
    for (int v = 0;; ++v) {
      const double nsq = norm_sq + static_cast<double>(v) * v;
      if (nsq > radius_sq_) break;
      n_[depth] = v;
      std::int64_t add = form_.quad[depth][depth] * v * v + form_.lin[depth] * v;
      for (std::size_t j = 0; j < depth; ++j) add += form_.quad[j][depth] * n_[j] * v;
      descend(depth + 1, partial + add, nsq);
    }
    n_[depth] = 0;
  }

  const ScaledForm& form_;
  double lambda_;
  double norm_b_;
  double radius_sq_ = 0;
  std::int64_t max_scaled_ = 0;
  const std::function<void(const std::vector<int>&, std::int64_t)>* visit_ = nullptr;
  std::vector<int> n_;
};

}  // namespace

PuiseuxSeries nahm_sum(const NahmDatum& datum, int order) {
  if (order < 0) throw InputError("order must be nonnegative");
  datum.validate();
  const ScaledForm form = scale_form(datum);
  const double lambda = min_eigenvalue_bound(datum.A);
  if (!(lambda > 0)) throw NotPositiveDefiniteError("eigenvalue bound is not positive");
  double norm_b = 0;
  for (const auto& b : datum.B) norm_b += b.get_d() * b.get_d();
  norm_b = std::sqrt(norm_b);

  LatticeWalker walker(form, lambda, norm_b);
  // The n = 0 term has exponent 0, so the minimum lies in the ball for E = 0.
  std::int64_t e_min = 0;
  walker.walk(0, [&](const std::vector<int>&, std::int64_t e) { e_min = std::min(e_min, e); });

  const std::int64_t den = form.den;
  const std::int64_t span = static_cast<std::int64_t>(order) * den;
  std::vector<std::int64_t> acc(static_cast<std::size_t>(span) + 1, 0);
  std::vector<std::vector<std::int64_t>> inv_poch;
  auto inverse_poch = [&](int n) -> const std::vector<std::int64_t>& {
    while (static_cast<int>(inv_poch.size()) <= n) {
      inv_poch.push_back(inverse_pochhammer_coefficients(static_cast<int>(inv_poch.size()), order));
    }
    return inv_poch[n];
  };
  std::vector<std::int64_t> prod, tmp;

  walker.walk(e_min + span, [&](const std::vector<int>& n, std::int64_t e) {
    const std::int64_t shift = e - e_min;
    const auto degree = static_cast<std::size_t>((span - shift) / den);
    prod.assign(degree + 1, 0);
    prod[0] = 1;
    for (int ni : n) {
      if (ni == 0) continue;
      const auto& p = inverse_poch(ni);
      tmp.assign(degree + 1, 0);
      for (std::size_t i = 0; i <= degree; ++i) {
        if (prod[i] == 0) continue;
        for (std::size_t j = 0; i + j <= degree; ++j) tmp[i + j] += prod[i] * p[j];
      }
      prod.swap(tmp);
    }
    for (std::size_t k = 0; k <= degree; ++k) {
      std::int64_t& slot = acc[static_cast<std::size_t>(shift) + k * static_cast<std::size_t>(den)];
      if (__builtin_add_overflow(slot, prod[k], &slot)) throw std::overflow_error("Nahm sum coefficient overflow");
    }
  });

  const Rational offset = datum.C + make_rational(e_min, den);
  const std::int64_t n_lat = lcm_int64(den, to_int64(offset.get_den()));
  const std::int64_t stretch = n_lat / den;
  std::vector<Rational> coeffs(static_cast<std::size_t>(span * stretch) + 1);
  for (std::size_t s = 0; s < acc.size(); ++s) {
    if (acc[s] != 0) coeffs[s * stretch] = Rational(Integer(static_cast<long>(acc[s])));
  }
  return PuiseuxSeries(n_lat, offset, std::move(coeffs)).compacted();
}

}  // namespace nahm
