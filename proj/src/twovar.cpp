#include "nahm/twovar.hpp"

#include <algorithm>

#include "nahm/errors.hpp"

namespace nahm {

namespace {

std::int64_t lattice_index(const Rational& value, std::int64_t n) {
  Rational scaled = value * Rational(Integer(static_cast<long>(n)));
  if (scaled.get_den() != 1) throw LatticeError("exponent " + to_string(value) + " is off the lattice");
  return to_int64(scaled.get_num());
}

void drop_zeros(LaurentZ& p) {
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

void add_scaled(LaurentZ& dst, const LaurentZ& src, const Rational& factor, int twice_shift) {
  for (const auto& [e, c] : src) {
    Rational& slot = dst[e + twice_shift];
    slot += c * factor;
    if (slot == 0) dst.erase(e + twice_shift);
  }
}

LaurentZ multiply(const LaurentZ& a, const LaurentZ& b) {
  LaurentZ out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  }
  drop_zeros(out);
  return out;
}

LaurentZ divide_by_z_half_difference(const LaurentZ& p) {
  // (z^(1/2) - z^(-1/2)) Q = P  gives  p[e] = q[e-1] - q[e+1] in twice-units;
  // solve downward from the top exponent.
  LaurentZ q;
  if (p.empty()) return q;
  const int top = p.rbegin()->first;
  const int bottom = p.begin()->first;
  for (const auto& kv : p) {
    if ((top - kv.first) % 2 != 0) throw DivisionError("mixed z-exponent parity in dividend");
  }
  Rational carry = 0;  // q[e+1] for the current e
  for (int e = top; e > bottom; e -= 2) {
    auto it = p.find(e);
    const Rational pe = it == p.end() ? Rational(0) : it->second;
    // q[e-1] = p[e] + q[e+1]
    Rational next = pe + carry;
    if (next != 0) q[e - 1] = next;
    carry = next;
  }
  // Remaining equation at the bottom: p[bottom] = -q[bottom+1].
  const Rational pb = p.begin()->second;
  auto it = q.find(bottom + 1);
  const Rational qb = it == q.end() ? Rational(0) : it->second;
  if (pb != -qb) {
    throw DivisionError("z-Laurent division left a remainder");
  }
  return q;
}

TwoVarSeries::TwoVarSeries(std::int64_t lattice_den, Rational offset, std::vector<LaurentZ> coeffs)
    : lattice_den_(lattice_den), offset_(std::move(offset)), coeffs_(std::move(coeffs)) {
  if (lattice_den_ <= 0) throw LatticeError("lattice denominator must be positive");
  if (coeffs_.empty()) throw TruncationError("series needs at least one known coefficient");
  lattice_index(offset_, lattice_den_);
  for (auto& c : coeffs_) drop_zeros(c);
}

Rational TwoVarSeries::exponent_at(std::int64_t index) const {
  return offset_ + make_rational(index, lattice_den_);
}

PuiseuxSeries TwoVarSeries::z_coefficient(int twice_exponent) const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    auto it = coeffs_[i].find(twice_exponent);
    if (it != coeffs_[i].end()) c[i] = it->second;
  }
  return PuiseuxSeries(lattice_den_, offset_, std::move(c));
}

LaurentZ TwoVarSeries::q_coefficient(const Rational& exponent) const {
  if (exponent > known_top()) throw TruncationError("q^" + to_string(exponent) + " is beyond the known range");
  if (exponent < offset_) return {};
  Rational idx = (exponent - offset_) * Rational(Integer(static_cast<long>(lattice_den_)));
  if (idx.get_den() != 1) return {};
  return coeffs_[to_int64(idx.get_num())];
}

TwoVarSeries TwoVarSeries::rescaled(std::int64_t new_lattice_den) const {
  if (new_lattice_den % lattice_den_ != 0) throw LatticeError("cannot rescale to a coarser lattice");
  const std::int64_t f = new_lattice_den / lattice_den_;
  if (f == 1) return *this;
  std::vector<LaurentZ> spread(static_cast<std::size_t>(order() * f + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) spread[i * f] = coeffs_[i];
  return TwoVarSeries(new_lattice_den, offset_, std::move(spread));
}

TwoVarSeries TwoVarSeries::reflected() const {
  std::vector<LaurentZ> c(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (const auto& [e, v] : coeffs_[i]) c[i][-e] = v;
  }
  return TwoVarSeries(lattice_den_, offset_, std::move(c));
}

TwoVarSeries operator+(const TwoVarSeries& a, const TwoVarSeries& b) {
  const std::int64_t n = lcm_int64(a.lattice_den(), b.lattice_den());
  const TwoVarSeries ra = a.rescaled(n);
  const TwoVarSeries rb = b.rescaled(n);
  if (Rational((ra.offset() - rb.offset()) * Rational(Integer(static_cast<long>(n)))).get_den() != 1) {
    throw LatticeError("offsets incongruent on the common lattice");
  }
  const Rational start = std::min(ra.offset(), rb.offset());
  const Rational top = std::min(ra.known_top(), rb.known_top());
  const std::int64_t len = lattice_index(top - start, n) + 1;
  std::vector<LaurentZ> c(static_cast<std::size_t>(len));
  for (const TwoVarSeries* s : {&ra, &rb}) {
    const std::int64_t shift = lattice_index(s->offset() - start, n);
    for (std::int64_t i = 0; i + shift < len && i <= s->order(); ++i) {
      add_scaled(c[i + shift], s->coefficients()[i], Rational(1));
    }
  }
  return TwoVarSeries(n, start, std::move(c));
}

TwoVarSeries operator*(const PuiseuxSeries& a, const TwoVarSeries& b) {
  const std::int64_t n = lcm_int64(a.lattice_den(), b.lattice_den());
  const PuiseuxSeries ra = a.rescaled(n);
  const TwoVarSeries rb = b.rescaled(n);
  const std::int64_t len = std::min(ra.order(), rb.order()) + 1;
  std::vector<LaurentZ> c(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) {
    const Rational& ai = ra.coefficients()[i];
    if (ai == 0) continue;
    for (std::int64_t j = 0; i + j < len; ++j) add_scaled(c[i + j], rb.coefficients()[j], ai);
  }
  return TwoVarSeries(n, ra.offset() + rb.offset(), std::move(c));
}

bool agree(const TwoVarSeries& a, const TwoVarSeries& b) {
  const Rational top = std::min(a.known_top(), b.known_top());
  for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    for (std::int64_t i = 0; i <= x->order(); ++i) {
      const Rational e = x->exponent_at(i);
      if (e > top) break;
      if (x->coefficients()[i].empty()) continue;
      if (y->q_coefficient(e) != x->coefficients()[i]) return false;
    }
  }
  return true;
}

}  // namespace nahm
