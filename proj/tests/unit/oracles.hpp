#pragma once

// Slow, independent reference implementations used only by the tests.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "nahm/matrix.hpp"
#include "nahm/qseries.hpp"
#include "nahm/rational.hpp"

namespace oracle {

using nahm::Rational;

// Exponent -> coefficient, everything above `top` discarded.
struct Sparse {
  std::map<Rational, Rational> c;
  Rational top;
};

inline Sparse multiply(const Sparse& a, const Sparse& b) {
  Sparse out;
  out.top = std::min(a.top + (b.c.empty() ? Rational(0) : b.c.begin()->first),
                     b.top + (a.c.empty() ? Rational(0) : a.c.begin()->first));
  for (const auto& [ea, ca] : a.c) {
    for (const auto& [eb, cb] : b.c) {
      const Rational e = ea + eb;
      if (e <= out.top) out.c[e] += ca * cb;
    }
  }
  std::erase_if(out.c, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// Number of partitions of n into parts of size <= max_part.
inline std::vector<std::int64_t> partitions(int n, int max_part) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= max_part; ++part) {
    for (int i = part; i <= n; ++i) p[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i - part)];
  }
  return p;
}

// Coefficients of 1/(q)_n through q^order as a map.
inline std::map<int, Rational> inverse_poch(int n, int order) {
  const auto p = partitions(order, n);
  std::map<int, Rational> out;
  for (int i = 0; i <= order; ++i) {
    if (p[static_cast<std::size_t>(i)] != 0) out[i] = Rational(static_cast<long>(p[static_cast<std::size_t>(i)]));
  }
  return out;
}

// Brute-force Nahm sum: every n in the box [0, box]^r, exponents kept
// through lead + order where lead is supplied by the caller.
inline std::map<Rational, Rational> nahm_box(const nahm::MatrixQ& a, const std::vector<Rational>& b, const Rational& c,
                                             int box, const Rational& top) {
  const std::size_t r = b.size();
  std::map<Rational, Rational> out;
  std::vector<int> n(r, 0);
  while (true) {
    Rational e = c;
    for (std::size_t i = 0; i < r; ++i) {
      e += b[i] * n[i];
      for (std::size_t j = 0; j < r; ++j) e += a(i, j) * n[i] * n[j] / 2;
    }
    if (e <= top) {
      // product of the 1/(q)_{n_i} series, shifted by e
      std::map<int, Rational> prod{{0, Rational(1)}};
      const Rational room = top - e;
      const int reach = static_cast<int>(nahm::floor(room).get_si());
      for (std::size_t i = 0; i < r; ++i) {
        const auto inv = inverse_poch(n[i], reach);
        std::map<int, Rational> next;
        for (const auto& [x, cx] : prod) {
          for (const auto& [y, cy] : inv) {
            if (x + y <= reach) next[x + y] += cx * cy;
          }
        }
        prod = std::move(next);
      }
      for (const auto& [x, cx] : prod) out[e + x] += cx;
    }
    std::size_t i = 0;
    while (i < r && n[i] == box) n[i++] = 0;
    if (i == r) break;
    ++n[i];
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// q^(1/24) prod_{n>=1} (1 - q^n) by direct polynomial multiplication.
inline std::vector<long> eta_product(int order) {
  std::vector<long> c(static_cast<std::size_t>(order) + 1, 0);
  c[0] = 1;
  for (int n = 1; n <= order; ++n) {
    for (int i = order; i >= n; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - n)];
  }
  return c;
}

// Every exponent/coefficient of a series up to `top`, zeros dropped.
inline std::map<Rational, Rational> terms(const nahm::PuiseuxSeries& s, const Rational& top) {
  std::map<Rational, Rational> out;
  for (std::int64_t i = 0; i <= s.order(); ++i) {
    const Rational e = s.exponent_at(i);
    if (e > top) break;
    if (s.coefficients()[static_cast<std::size_t>(i)] != 0) out[e] = s.coefficients()[static_cast<std::size_t>(i)];
  }
  return out;
}

inline std::map<Rational, Rational> restrict(const std::map<Rational, Rational>& m, const Rational& top) {
  std::map<Rational, Rational> out;
  for (const auto& [e, c] : m) {
    if (e <= top) out[e] = c;
  }
  return out;
}

}  // namespace oracle
