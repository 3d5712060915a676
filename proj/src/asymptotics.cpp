// q -> 1 expansion coefficients of log f_{A,B,0}(e^-eps) at the TBA point.
// The first-order coefficient gives C, the second must vanish.

#include <algorithm>
#include <array>
#include <cmath>

#include "nahm/errors.hpp"
#include "nahm/tba.hpp"

namespace nahm {

namespace {

// x-dependent weights: a_k(x) = Li_{1-k}(x).
struct Weights {
  std::size_t r;
  const RealMatrix& F;
  std::vector<Real> a1, a2, a3, a4, a5;

  explicit Weights(const TBASolution& sol) : r(sol.x.size()), F(sol.F), a1(r), a2(r), a3(r), a4(r), a5(r) {
    for (std::size_t i = 0; i < r; ++i) {
      const Real& x = sol.x[i];
      const Real om = 1 - x;
      a1[i] = x / om;
      a2[i] = x / (om * om);
      a3[i] = x * (1 + x) / (om * om * om);
      a4[i] = (x * x * x + 4 * x * x + x) / pow(om, 4);
      a5[i] = (pow(x, 4) + 11 * x * x * x + 11 * x * x + x) / pow(om, 5);
    }
  }
};

// Polynomial in t with at most three factors per monomial.
struct SmallPoly {
  struct Term {
    std::array<int, 3> idx;  // sorted, unused slots are -1 at the front
    int degree;
    Real coef;
  };
  std::vector<Term> terms;

  static SmallPoly constant(const Real& c) { return SmallPoly{{Term{{-1, -1, -1}, 0, c}}}; }
  static SmallPoly variable(int i) { return SmallPoly{{Term{{-1, -1, i}, 1, Real(1)}}}; }

  SmallPoly& operator+=(const SmallPoly& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
};

SmallPoly operator*(const Real& w, const SmallPoly& p) {
  SmallPoly out = p;
  for (auto& t : out.terms) t.coef *= w;
  return out;
}

SmallPoly operator*(const SmallPoly& a, const SmallPoly& b) {
  SmallPoly out;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      const int deg = ta.degree + tb.degree;
      if (deg > 3) throw std::logic_error("asymptotic polynomial exceeds degree 3");
      std::array<int, 6> all{};
      std::copy(ta.idx.begin(), ta.idx.end(), all.begin());
      std::copy(tb.idx.begin(), tb.idx.end(), all.begin() + 3);
      std::sort(all.begin(), all.end());
      SmallPoly::Term t;
      std::copy(all.begin() + 3, all.end(), t.idx.begin());
      t.degree = deg;
      t.coef = ta.coef * tb.coef;
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

SmallPoly operator+(SmallPoly a, const SmallPoly& b) {
  a += b;
  return a;
}

// Bernoulli-type factors phi_1(b) = t, phi_2(b) = t^2 - 1/12, phi_3(b) = t^3 - t/4.
struct DirectPhi {
  using Value = Real;
  std::vector<Real> p1, p2, p3;

  explicit DirectPhi(const std::vector<Real>& b) {
    for (const auto& v : b) {
      p1.push_back(v - Real(0.5));
      p2.push_back(v * v - v + Real(1) / 6);
      p3.push_back(v * v * v - Real(1.5) * v * v + v / 2);
    }
  }
  Real one() const { return Real(1); }
  const Real& phi1(std::size_t i) const { return p1[i]; }
  const Real& phi2(std::size_t i) const { return p2[i]; }
  const Real& phi3(std::size_t i) const { return p3[i]; }
};

struct PolyPhi {
  using Value = SmallPoly;
  SmallPoly one() const { return SmallPoly::constant(Real(1)); }
  SmallPoly phi1(std::size_t i) const { return SmallPoly::variable(static_cast<int>(i)); }
  SmallPoly phi2(std::size_t i) const {
    return phi1(i) * phi1(i) + SmallPoly::constant(Real(-1) / 12);
  }
  SmallPoly phi3(std::size_t i) const {
    return phi1(i) * phi1(i) * phi1(i) + Real(-1) / 4 * phi1(i);
  }
};

template <class Phi>
typename Phi::Value c_expression(const Weights& w, const Phi& phi) {
  using V = typename Phi::Value;
  const auto& F = w.F;
  V s = Real(0) * phi.one();
  for (std::size_t i = 0; i < w.r; ++i) {
    s += Real(w.a1[i] / 2) * phi.phi2(i);
    s += Real(w.a2[i] * F[i][i] / 2) * phi.phi1(i);
    s += Real(w.a3[i] * F[i][i] * F[i][i] / 8) * phi.one();
  }
  for (std::size_t i = 0; i < w.r; ++i) {
    for (std::size_t j = 0; j < w.r; ++j) {
      // The printed formula has F_ii in this first term; F_ij is what
      // reproduces the known C values beyond rank one.
      s += Real(-w.a1[i] * F[i][j] * w.a1[j] / 2) * (phi.phi1(i) * phi.phi1(j));
      s += Real(-w.a2[i] * F[i][i] * F[i][j] * w.a1[j] / 2) * phi.phi1(j);
      s += Real(-w.a2[i] * pow(F[i][j], 3) * w.a2[j] / 12) * phi.one();
      s += Real(-w.a2[i] * F[i][i] * F[i][j] * F[j][j] * w.a2[j] / 8) * phi.one();
    }
  }
  return s;
}

template <class Phi>
typename Phi::Value residual_expression(const Weights& w, const Phi& phi) {
  using V = typename Phi::Value;
  const auto& F = w.F;
  const auto& a1 = w.a1;
  const auto& a2 = w.a2;
  const auto& a3 = w.a3;
  const auto& a4 = w.a4;
  const auto& a5 = w.a5;
  const std::size_t r = w.r;
  V s = Real(0) * phi.one();

  for (std::size_t i = 0; i < r; ++i) {
    const Real& Fii = F[i][i];
    s += Real(-a2[i] / 6) * phi.phi3(i);
    s += Real(-Fii * a3[i] / 4) * phi.phi2(i);
    s += Real(-Fii * Fii * a4[i] / 8) * phi.phi1(i);
    // The printed denominator reads (1 - w_i)^5; w is x here.
    s += Real(-pow(Fii, 3) * a5[i] / 48) * phi.one();
  }

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const Real& Fij = F[i][j];
      const Real& Fii = F[i][i];
      const Real& Fjj = F[j][j];
      s += Real(Fij * a1[i] * a2[j] / 4) * (phi.phi1(i) * phi.phi2(j));
      s += Real(Fij * a2[i] * a1[j] / 4) * (phi.phi2(i) * phi.phi1(j));
      s += Real(Fij * Fjj * a1[i] * a3[j] / 2) * (phi.phi1(i) * phi.phi1(j));
      s += Real(Fij * Fjj * a2[i] * a2[j] / 4) * phi.phi2(i);
      s += Real(Fij * Fjj * Fjj * a1[i] * a4[j] / 8) * phi.phi1(i);
      s += Real(Fij * Fij * a2[i] * a2[j] / 4) * (phi.phi1(i) * phi.phi1(j));
      s += Real(Fij * Fij * Fjj * a2[i] * a3[j] / 4) * phi.phi1(i);
      s += Real(Fii * Fij * Fjj * a2[i] * a3[j] / 8) * phi.phi1(j);
      s += Real(Fii * Fij * Fjj * a3[i] * a2[j] / 8) * phi.phi1(i);
      s += Real(pow(Fij, 3) * a2[i] * a3[j] / 12) * phi.phi1(j);
      s += Real(pow(Fij, 3) * a3[i] * a2[j] / 12) * phi.phi1(i);
      s += Real(Fii * Fij * Fjj * Fjj * a2[i] * a4[j] / 16) * phi.one();
      s += Real(pow(Fij, 3) * Fjj * a2[i] * a4[j] / 12) * phi.one();
      s += Real(pow(Fij, 4) * a3[i] * a3[j] / 48) * phi.one();
      s += Real(Fii * Fij * Fij * Fjj * a3[i] * a3[j] / 16) * phi.one();
    }
  }

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        const Real& Fij = F[i][j];
        const Real& Fjk = F[j][k];
        const Real& Fik = F[i][k];
        const Real& Fii = F[i][i];
        const Real& Fjj = F[j][j];
        const Real& Fkk = F[k][k];
        s += Real(-Fij * Fjk * a1[i] * a2[j] * a1[k] / 2) * (phi.phi1(i) * phi.phi1(j) * phi.phi1(k));
        s += Real(-Fij * Fjj * Fjk * a1[i] * a3[j] * a1[k] / 4) * (phi.phi1(i) * phi.phi1(k));
        s += Real(-Fii * Fij * Fjk * Fjk * a2[i] * a2[j] * a2[k] / 4) * phi.phi1(k);
        s += Real(-Fii * Fij * Fjk * Fkk * a2[i] * a2[j] * a2[k] / 8) * phi.phi1(j);
        s += Real(-Fij * Fjk * Fik * Fik * a2[i] * a2[j] * a2[k] / 4) * phi.phi1(j);
        s += Real(-Fii * Fij * Fjk * Fjk * Fkk * a2[i] * a2[j] * a3[k] / 8) * phi.one();
        s += Real(-Fii * Fij * Fjj * Fjk * Fkk * a2[i] * a3[j] * a2[k] / 16) * phi.one();
        s += Real(-Fii * Fij * pow(Fjk, 3) * a2[i] * a3[j] * a2[k] / 12) * phi.one();
        s += Real(-Fij * Fij * Fjk * Fjk * Fik * a2[i] * a3[j] * a2[k] / 8) * phi.one();
        s += Real(-Fij * Fjj * Fjk * Fik * Fik * a2[i] * a3[j] * a2[k] / 8) * phi.one();
        s += Real(-Fij * Fjk * Fkk * a1[i] * a2[j] * a2[k] / 2) * (phi.phi1(i) * phi.phi1(j));
        s += Real(-Fij * Fjk * Fjk * Fkk * a1[i] * a2[j] * a3[k] / 4) * phi.phi1(i);
        s += Real(-Fij * Fjk * Fjk * a1[i] * a2[j] * a2[k] / 2) * (phi.phi1(i) * phi.phi1(k));
        s += Real(-Fij * Fjj * Fjk * Fkk * a1[i] * a3[j] * a2[k] / 4) * phi.phi1(i);
        s += Real(-Fij * pow(Fjk, 3) * a1[i] * a3[j] * a2[k] / 6) * phi.phi1(i);
      }
    }
  }

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t l = 0; l < r; ++l) {
          const Real& Fij = F[i][j];
          const Real& Fik = F[i][k];
          const Real& Fil = F[i][l];
          const Real& Fjk = F[j][k];
          const Real& Fjl = F[j][l];
          const Real& Fkl = F[k][l];
          const Real& Fii = F[i][i];
          const Real& Fkk = F[k][k];
          const Real& Fll = F[l][l];
          const Real c4 = a2[i] * a2[j] * a2[k] * a2[l];
          const Real c3 = a1[i] * a2[j] * a2[k] * a2[l];
          s += Real(Fij * Fjk * Fjk * Fkl * a1[i] * a2[j] * a2[k] * a1[l] / 4) * (phi.phi1(i) * phi.phi1(l));
          s += Real(Fij * Fik * Fik * Fjl * Fjl * Fkl * c4 / 16) * phi.one();
          s += Real(Fij * Fik * Fkl * Fjl * Fil * Fjk * c4 / 24) * phi.one();
          s += Real(Fii * Fij * Fjk * Fjk * Fkl * Fll * c4 / 16) * phi.one();
          s += Real(Fij * Fjk * Fjl * a1[i] * a2[j] * a1[k] * a1[l] / 6) *
               (phi.phi1(i) * phi.phi1(k) * phi.phi1(l));
          s += Real(Fii * Fij * Fjk * Fjl * Fkk * Fll * c4 / 48) * phi.one();
          s += Real(Fii * Fij * Fjk * Fjl * Fkl * Fkl * c4 / 8) * phi.one();
          s += Real(Fij * Fjk * Fjl * Fkk * Fll * c3 / 8) * phi.phi1(i);
          s += Real(Fij * Fjk * Fjl * Fkl * Fkl * c3 / 4) * phi.phi1(i);
          s += Real(Fij * Fjk * Fjk * Fkl * Fll * c3 / 4) * phi.phi1(i);
          s += Real(Fii * Fij * Fjk * Fjl * a2[i] * a2[j] * a1[k] * a1[l] / 4) * (phi.phi1(k) * phi.phi1(l));
        }
      }
    }
  }
  return s;
}

void check_shape(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol) {
  if (a.rows() != sol.x.size() || b.size() != sol.x.size()) {
    throw InputError("A, B and the TBA solution disagree on the rank");
  }
}

std::vector<Real> to_reals(const std::vector<Rational>& b) {
  std::vector<Real> out;
  out.reserve(b.size());
  for (const auto& v : b) out.push_back(to_real(v));
  return out;
}

}  // namespace

Real asymptotic_c_value(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol) {
  check_shape(a, b, sol);
  return c_expression(Weights(sol), DirectPhi(to_reals(b)));
}

AsymptoticC asymptotic_C(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol,
                         const ScreenConfig& screen, const PrecisionConfig& precision) {
  Real value = asymptotic_c_value(a, b, sol);
  auto rational = rational_reconstruct(value, Integer(screen.max_denominator), pow10_neg(screen.recon_digits(precision)));
  return AsymptoticC{std::move(value), std::move(rational)};
}

Real asymptotic_residual(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol) {
  check_shape(a, b, sol);
  return residual_expression(Weights(sol), DirectPhi(to_reals(b)));
}

namespace {

template <class Cubic>
void accumulate(Cubic& out, const SmallPoly& p, std::size_t r) {
  out.c0 = 0;
  out.c1.assign(r, Real(0));
  out.c2.assign(r * r, Real(0));
  out.c3.assign(r * r * r, Real(0));
  for (const auto& t : p.terms) {
    const auto i = static_cast<std::size_t>(t.idx[0]);
    const auto j = static_cast<std::size_t>(t.idx[1]);
    const auto k = static_cast<std::size_t>(t.idx[2]);
    switch (t.degree) {
      case 0: out.c0 += t.coef; break;
      case 1: out.c1[k] += t.coef; break;
      case 2: out.c2[j * r + k] += t.coef; break;
      default: out.c3[(i * r + j) * r + k] += t.coef; break;
    }
  }
}

}  // namespace

AsymptoticPolynomials::AsymptoticPolynomials(const TBASolution& sol) : rank_(sol.x.size()) {
  const Weights w(sol);
  accumulate(c_poly_, c_expression(w, PolyPhi{}), rank_);
  accumulate(residual_poly_, residual_expression(w, PolyPhi{}), rank_);
  const std::size_t r = rank_;
  d0_ = residual_poly_.c0.convert_to<double>();
  for (std::size_t i = 0; i < r; ++i) {
    const double v = residual_poly_.c1[i].convert_to<double>();
    if (v != 0) d1_.emplace_back(static_cast<int>(i), v);
    for (std::size_t j = i; j < r; ++j) {
      const double v2 = residual_poly_.c2[i * r + j].convert_to<double>();
      if (v2 != 0) d2_.emplace_back(static_cast<int>(i), static_cast<int>(j), v2);
      for (std::size_t k = j; k < r; ++k) {
        const double v3 = residual_poly_.c3[(i * r + j) * r + k].convert_to<double>();
        if (v3 != 0) d3_.emplace_back(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), v3);
      }
    }
  }
}

Real AsymptoticPolynomials::evaluate(const Cubic& p, const std::vector<Real>& t) const {
  const std::size_t r = rank_;
  Real s = p.c0;
  for (std::size_t i = 0; i < r; ++i) {
    s += p.c1[i] * t[i];
    for (std::size_t j = i; j < r; ++j) {
      const Real tij = t[i] * t[j];
      s += p.c2[i * r + j] * tij;
      for (std::size_t k = j; k < r; ++k) s += p.c3[(i * r + j) * r + k] * tij * t[k];
    }
  }
  return s;
}

Real AsymptoticPolynomials::c_value(const std::vector<Real>& t) const { return evaluate(c_poly_, t); }

Real AsymptoticPolynomials::residual(const std::vector<Real>& t) const { return evaluate(residual_poly_, t); }

double AsymptoticPolynomials::residual_double(const double* t, double* magnitude) const {
  double s = d0_;
  double m = std::abs(d0_);
  for (const auto& [i, c] : d1_) {
    const double v = c * t[i];
    s += v;
    m += std::abs(v);
  }
  for (const auto& [i, j, c] : d2_) {
    const double v = c * t[i] * t[j];
    s += v;
    m += std::abs(v);
  }
  for (const auto& [i, j, k, c] : d3_) {
    const double v = c * t[i] * t[j] * t[k];
    s += v;
    m += std::abs(v);
  }
  if (magnitude) *magnitude = m;
  return s;
}

}  // namespace nahm
