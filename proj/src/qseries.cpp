#include "nahm/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nahm/errors.hpp"

namespace nahm {

namespace {

std::int64_t den_int64(const Rational& r) { return to_int64(r.get_den()); }

// value * n as an integer; throws LatticeError if it is not one.
std::int64_t lattice_index(const Rational& value, std::int64_t n) {
  Rational scaled = value * Rational(Integer(static_cast<long>(n)));
  if (scaled.get_den() != 1) throw LatticeError("exponent " + to_string(value) + " is off the 1/" + std::to_string(n) + " lattice");
  return to_int64(scaled.get_num());
}

std::int64_t common_lattice(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return lcm_int64(a.lattice_den(), b.lattice_den());
}

}  // namespace

PuiseuxSeries::PuiseuxSeries(std::int64_t lattice_den, Rational offset, std::vector<Rational> coeffs)
    : lattice_den_(lattice_den), offset_(std::move(offset)), coeffs_(std::move(coeffs)) {
  if (lattice_den_ <= 0) throw LatticeError("lattice denominator must be positive");
  if (coeffs_.empty()) throw TruncationError("series needs at least one known coefficient");
  offset_.canonicalize();
  lattice_index(offset_, lattice_den_);
  for (auto& c : coeffs_) c.canonicalize();
}

PuiseuxSeries PuiseuxSeries::from_integer_steps(const Rational& offset, const std::vector<Rational>& coeffs) {
  const std::int64_t n = den_int64(offset);
  std::vector<Rational> spread((coeffs.size() - 1) * n + 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) spread[i * n] = coeffs[i];
  return PuiseuxSeries(n, offset, std::move(spread));
}

PuiseuxSeries PuiseuxSeries::from_terms(const std::vector<std::pair<Rational, Rational>>& terms, const Rational& start,
                                        const Rational& top) {
  if (top < start) throw TruncationError("known top below start");
  std::int64_t n = lcm_int64(den_int64(start), den_int64(top));
  for (const auto& [e, c] : terms) {
    if (e <= top) n = lcm_int64(n, den_int64(e));
  }
  std::vector<Rational> coeffs(lattice_index(top - start, n) + 1);
  for (const auto& [e, c] : terms) {
    if (e > top) continue;
    if (e < start) throw TruncationError("term q^" + to_string(e) + " below series start");
    coeffs[lattice_index(e - start, n)] += c;
  }
  return PuiseuxSeries(n, start, std::move(coeffs));
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& exponent, const Rational& coeff, const Rational& top) {
  return from_terms({{exponent, coeff}}, exponent, top);
}

Rational PuiseuxSeries::exponent_at(std::int64_t index) const {
  return offset_ + make_rational(index, lattice_den_);
}

Rational PuiseuxSeries::coefficient(const Rational& exponent) const {
  if (exponent > known_top()) {
    throw TruncationError("q^" + to_string(exponent) + " is beyond the known range (top " + to_string(known_top()) + ")");
  }
  if (exponent < offset_) return 0;
  Rational idx = (exponent - offset_) * Rational(Integer(static_cast<long>(lattice_den_)));
  if (idx.get_den() != 1) return 0;
  return coeffs_[to_int64(idx.get_num())];
}

std::optional<std::int64_t> PuiseuxSeries::leading_index() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return static_cast<std::int64_t>(i);
  }
  return std::nullopt;
}

std::optional<Rational> PuiseuxSeries::leading_exponent() const {
  if (auto i = leading_index()) return exponent_at(*i);
  return std::nullopt;
}

bool PuiseuxSeries::is_zero() const { return !leading_index().has_value(); }

PuiseuxSeries PuiseuxSeries::rescaled(std::int64_t new_lattice_den) const {
  if (new_lattice_den % lattice_den_ != 0) {
    throw LatticeError("cannot rescale lattice 1/" + std::to_string(lattice_den_) + " to 1/" + std::to_string(new_lattice_den));
  }
  const std::int64_t f = new_lattice_den / lattice_den_;
  if (f == 1) return *this;
  std::vector<Rational> spread(static_cast<std::size_t>(order() * f + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) spread[i * f] = coeffs_[i];
  }
  return PuiseuxSeries(new_lattice_den, offset_, std::move(spread));
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& top) const {
  if (top >= known_top()) return *this;
  if (top < offset_) throw TruncationError("truncation below series start");
  const Rational steps = (top - offset_) * Rational(Integer(static_cast<long>(lattice_den_)));
  const std::int64_t keep = to_int64(nahm::floor(steps)) + 1;
  return PuiseuxSeries(lattice_den_, offset_, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + keep));
}

PuiseuxSeries PuiseuxSeries::trimmed() const {
  const auto lead = leading_index();
  if (!lead || *lead == 0) return *this;
  return PuiseuxSeries(lattice_den_, exponent_at(*lead), std::vector<Rational>(coeffs_.begin() + *lead, coeffs_.end()));
}

PuiseuxSeries PuiseuxSeries::compacted() const {
  std::int64_t g = std::gcd(lattice_den_, lattice_index(offset_, lattice_den_));
  g = std::gcd(g, order());
  for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
    if (coeffs_[i] != 0) g = std::gcd(g, static_cast<std::int64_t>(i));
  }
  if (g <= 1) return *this;
  std::vector<Rational> packed(static_cast<std::size_t>(order() / g + 1));
  for (std::size_t i = 0; i < packed.size(); ++i) packed[i] = coeffs_[i * g];
  return PuiseuxSeries(lattice_den_ / g, offset_, std::move(packed));
}

PuiseuxSeries PuiseuxSeries::shifted(const Rational& exponent) const {
  const Rational new_offset = offset_ + exponent;
  const std::int64_t n = lcm_int64(lattice_den_, den_int64(new_offset));
  PuiseuxSeries out = rescaled(n);
  out.offset_ = new_offset;
  return out;
}

PuiseuxSeries PuiseuxSeries::scaled(const Rational& factor) const {
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v *= factor;
  return PuiseuxSeries(lattice_den_, offset_, std::move(c));
}

PuiseuxSeries PuiseuxSeries::inverse() const {
  if (coeffs_[0] == 0) throw ZeroLeadingCoefficientError("cannot invert a series whose leading coefficient is zero");
  const Rational inv0 = 1 / coeffs_[0];
  std::vector<std::size_t> support;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) support.push_back(i);
  }
  std::vector<Rational> out(coeffs_.size());
  out[0] = inv0;
  Rational acc;
  for (std::size_t n = 1; n < out.size(); ++n) {
    acc = 0;
    for (std::size_t k : support) {
      if (k > n) break;
      if (out[n - k] != 0) acc += coeffs_[k] * out[n - k];
    }
    out[n] = -acc * inv0;
  }
  return PuiseuxSeries(lattice_den_, -offset_, std::move(out));
}

PuiseuxSeries PuiseuxSeries::operator-() const { return scaled(Rational(-1)); }

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  const std::int64_t n = common_lattice(a, b);
  const PuiseuxSeries ra = a.rescaled(n);
  const PuiseuxSeries rb = b.rescaled(n);
  const Rational gap = ra.offset() - rb.offset();
  if (Rational(gap * Rational(Integer(static_cast<long>(n)))).get_den() != 1) {
    throw LatticeError("offsets " + to_string(a.offset()) + " and " + to_string(b.offset()) +
                       " are incongruent on the 1/" + std::to_string(n) + " lattice");
  }
  const Rational start = std::min(ra.offset(), rb.offset());
  const Rational top = std::min(ra.known_top(), rb.known_top());
  const std::int64_t len = lattice_index(top - start, n) + 1;
  std::vector<Rational> c(static_cast<std::size_t>(len));
  for (const PuiseuxSeries* s : {&ra, &rb}) {
    const std::int64_t shift = lattice_index(s->offset() - start, n);
    const auto& sc = s->coefficients();
    for (std::int64_t i = 0; i + shift < len && i < static_cast<std::int64_t>(sc.size()); ++i) {
      if (sc[i] != 0) c[i + shift] += sc[i];
    }
  }
  return PuiseuxSeries(n, start, std::move(c));
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  const std::int64_t n = common_lattice(a, b);
  const PuiseuxSeries ra = a.rescaled(n);
  const PuiseuxSeries rb = b.rescaled(n);
  const std::int64_t len = std::min(ra.order(), rb.order()) + 1;
  std::vector<std::pair<std::int64_t, const Rational*>> nz_b;
  for (std::int64_t j = 0; j < len; ++j) {
    if (rb.coefficients()[j] != 0) nz_b.emplace_back(j, &rb.coefficients()[j]);
  }
  std::vector<Rational> c(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) {
    const Rational& ai = ra.coefficients()[i];
    if (ai == 0) continue;
    for (const auto& [j, bj] : nz_b) {
      if (i + j >= len) break;
      c[i + j] += ai * *bj;
    }
  }
  return PuiseuxSeries(n, ra.offset() + rb.offset(), std::move(c));
}

bool agree_through(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rational& top) {
  if (top > a.known_top() || top > b.known_top()) {
    throw TruncationError("comparison through q^" + to_string(top) + " exceeds a known range");
  }
  // Every nonzero coefficient of either side must be matched by the other.
  for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    const auto& xc = x->coefficients();
    for (std::size_t i = 0; i < xc.size(); ++i) {
      if (xc[i] == 0) continue;
      const Rational e = x->exponent_at(static_cast<std::int64_t>(i));
      if (e > top) break;
      if (y->coefficient(e) != xc[i]) return false;
    }
  }
  return true;
}

bool agree(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return agree_through(a, b, std::min(a.known_top(), b.known_top()));
}

PuiseuxSeries pochhammer(int n, int order) {
  if (n < 0) throw InputError("pochhammer index must be nonnegative");
  if (order < 0) throw InputError("order must be nonnegative");
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  c[0] = 1;
  for (int j = 1; j <= n && j <= order; ++j) {
    for (int i = order; i >= j; --i) c[i] -= c[i - j];
  }
  return PuiseuxSeries(1, Rational(0), std::move(c));
}

std::vector<std::int64_t> inverse_pochhammer_coefficients(int n, int order) {
  // 1/(q)_n = prod_{j<=n} 1/(1-q^j): repeated prefix sums with stride j.
  std::vector<std::int64_t> c(static_cast<std::size_t>(order) + 1, 0);
  c[0] = 1;
  for (int j = 1; j <= n && j <= order; ++j) {
    for (int i = j; i <= order; ++i) {
      if (__builtin_add_overflow(c[i], c[i - j], &c[i])) throw std::overflow_error("1/(q)_n coefficient overflow");
    }
  }
  return c;
}

PuiseuxSeries dedekind_eta(int order) {
  if (order < 0) throw InputError("order must be nonnegative");
  // Euler: prod (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2), k over Z.
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  c[0] = 1;
  for (long k = 1;; ++k) {
    const long e1 = k * (3 * k - 1) / 2;
    const long e2 = k * (3 * k + 1) / 2;
    if (e1 > order) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[e1] += sign;
    if (e2 <= order) c[e2] += sign;
  }
  return PuiseuxSeries::from_integer_steps(Rational(1, 24), c).rescaled(24);
}

PuiseuxSeries theta_lattice(const Rational& a, const Rational& b, int order) {
  if (a <= 0) throw InputError("theta_lattice needs a > 0");
  if (order < 0) throw InputError("order must be nonnegative");
  // Closest lattice point to -b gives the leading exponent.
  const Rational frac = b - Rational(nahm::floor(b));
  const Rational dist = std::min(frac, Rational(1 - frac));
  const Rational start = a * dist * dist;
  const Rational top = start + order;
  const double reach = std::sqrt(Rational(top / a).get_d()) + 2.0;
  const long lo = static_cast<long>(std::floor(-b.get_d() - reach));
  const long hi = static_cast<long>(std::ceil(-b.get_d() + reach));
  std::vector<std::pair<Rational, Rational>> terms;
  for (long j = lo; j <= hi; ++j) {
    const Rational t = Rational(j) + b;
    const Rational e = a * t * t;
    if (e <= top) terms.emplace_back(e, Rational(1));
  }
  return PuiseuxSeries::from_terms(terms, start, top);
}

std::optional<Rational> rational_reconstruct(const Real& x, const Integer& max_denominator, const Real& tol) {
  Integer h_prev = 1, h_prev2 = 0;
  Integer k_prev = 0, k_prev2 = 1;
  Real y = x;
  const Real negligible = pow(Real(10), -static_cast<int>(Real::default_precision()) + 3);
  for (int guard = 0; guard < 10000; ++guard) {
    const Real fl = floor(y);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
    const Integer h = a * h_prev + h_prev2;
    const Integer k = a * k_prev + k_prev2;
    if (k > max_denominator) return std::nullopt;
    Rational candidate(h, k);
    candidate.canonicalize();
    if (abs(x - to_real(candidate)) <= tol) return candidate;
    const Real frac = y - fl;
    if (frac <= negligible) return std::nullopt;
    y = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

}  // namespace nahm
