#include "nahm/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "nahm/errors.hpp"

namespace nahm {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

// m reduced into (-k, k] modulo 2k.
int normalize_m(int m, int k) {
  const int period = 2 * k;
  int r = (m + k - 1) % period;
  if (r < 0) r += period;
  return r - (k - 1);
}

void check_order(int order) {
  if (order < 0) throw InputError("order must be nonnegative");
}

Rational rat(long p, long q = 1) { return make_rational(p, q); }

// Integer-step two-variable series starting at `offset`.
TwoVarSeries from_integer_steps(const Rational& offset, const std::vector<LaurentZ>& steps) {
  const std::int64_t n = to_int64(Integer(offset.get_den()));
  std::vector<LaurentZ> spread(static_cast<std::size_t>((steps.size() - 1) * n + 1));
  for (std::size_t i = 0; i < steps.size(); ++i) spread[i * n] = steps[i];
  return TwoVarSeries(n, offset, std::move(spread));
}

// Adds sign * sum_n q^((2Kn+m)^2/(4K)) z^((2Kn+m)/2) to out, where out[i]
// holds the coefficient of q^(base + i). Exponents must sit on base + Z.
void add_theta(std::vector<LaurentZ>& out, int big_k, int m, const Rational& base, int sign) {
  const long top = static_cast<long>(out.size()) - 1;
  const long reach = top + 3;
  for (long n = -reach; n <= reach; ++n) {
    const long w = 2L * big_k * n + m;
    const Rational step = make_rational(w * w, 4L * big_k) - base;
    if (step.get_den() != 1) throw LatticeError("theta term off the integer lattice");
    if (step < 0) throw std::logic_error("theta term below its base exponent");
    const long idx = step.get_num().get_si();
    if (idx > top) continue;
    Rational& slot = out[static_cast<std::size_t>(idx)][static_cast<int>(w)];
    slot += sign;
    if (slot == 0) out[static_cast<std::size_t>(idx)].erase(static_cast<int>(w));
  }
}

std::string coset_name(const CosetLabel& c) {
  return "coset:k=" + std::to_string(c.k) + ",l=" + std::to_string(c.l) + ",m=" + std::to_string(c.m);
}

}  // namespace

std::string label_name(const CharacterLabel& label) {
  return std::visit(Overloaded{
                        [](const MinimalLabel& v) {
                          return "minimal:p=" + std::to_string(v.p) + ",s=" + std::to_string(v.s);
                        },
                        [](const AffineLabel& v) {
                          return "affine:k=" + std::to_string(v.k) + ",l=" + std::to_string(v.l);
                        },
                        [](const U1Label& v) { return "u1:k=" + std::to_string(v.k) + ",m=" + std::to_string(v.m); },
                        [](const CosetLabel& v) { return coset_name(v); },
                    },
                    label);
}

CharacterLabel parse_label(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("character label needs 'kind:' prefix: " + text);
  const std::string kind = text.substr(0, colon);
  std::vector<std::pair<std::string, int>> fields;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("malformed label field '" + item + "'");
    try {
      std::size_t used = 0;
      const int v = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw ParseError("malformed label value in '" + item + "'");
      fields.emplace_back(item.substr(0, eq), v);
    } catch (const std::logic_error&) {
      throw ParseError("malformed label value in '" + item + "'");
    }
  }
  auto expect = [&](std::initializer_list<const char*> keys) {
    if (fields.size() != keys.size()) throw ParseError("wrong number of fields in label " + text);
    std::size_t i = 0;
    for (const char* key : keys) {
      if (fields[i++].first != key) throw ParseError("unexpected field in label " + text);
    }
  };
  if (kind == "minimal") {
    expect({"p", "s"});
    return MinimalLabel{fields[0].second, fields[1].second};
  }
  if (kind == "affine") {
    expect({"k", "l"});
    return AffineLabel{fields[0].second, fields[1].second};
  }
  if (kind == "u1") {
    expect({"k", "m"});
    return U1Label{fields[0].second, fields[1].second};
  }
  if (kind == "coset") {
    expect({"k", "l", "m"});
    return CosetLabel{fields[0].second, fields[1].second, fields[2].second};
  }
  throw ParseError("unknown character kind '" + kind + "'");
}

void validate_label(const CharacterLabel& label) {
  std::visit(Overloaded{
                 [](const MinimalLabel& v) {
                   if (v.p < 5 || v.p % 2 == 0) throw LabelError("minimal model needs odd p >= 5");
                   if (v.s < 1 || v.s > (v.p - 1) / 2) throw LabelError("s must lie in 1..(p-1)/2");
                 },
                 [](const AffineLabel& v) {
                   if (v.k < 1) throw LabelError("level k must be positive");
                   if (v.l < 0 || v.l > v.k) throw LabelError("l must lie in 0..k");
                 },
                 [](const U1Label& v) {
                   if (v.k < 1) throw LabelError("level k must be positive");
                   if (v.m <= -v.k || v.m > v.k) throw LabelError("m must lie in -k+1..k");
                 },
                 [](const CosetLabel& v) {
                   if (v.k < 1) throw LabelError("level k must be positive");
                   if (v.l < 0 || v.l > v.k) throw LabelError("l must lie in 0..k");
                   if (v.m <= -v.k || v.m > v.k) throw LabelError("m must lie in -k+1..k");
                   if ((v.l + v.m) % 2 != 0) throw LabelError("l + m must be even for " + coset_name(v));
                 },
             },
             label);
}

TargetCombination make_combination(std::vector<std::pair<CharacterLabel, int>> terms) {
  if (terms.empty()) throw LabelError("empty character combination");
  std::sort(terms.begin(), terms.end());
  std::string name;
  for (const auto& [label, mult] : terms) {
    if (mult < 1) throw LabelError("multiplicities must be positive");
    if (!name.empty()) name += "+";
    if (mult != 1) name += std::to_string(mult) + "*";
    name += label_name(label);
  }
  return TargetCombination{std::move(terms), std::move(name)};
}

PuiseuxSeries minimal_character(int p, int s, int order) {
  validate_label(MinimalLabel{p, s});
  check_order(order);
  const Rational start = make_rational((p - 2 * s) * (p - 2 * s), 8L * p);
  const Rational top = start + order;
  std::vector<std::pair<Rational, Rational>> terms;
  for (long j = -(order + 2); j <= order + 2; ++j) {
    const long plus = 4L * p * j + p - 2L * s;
    const long minus = 4L * p * j + p + 2L * s;
    const Rational e1 = make_rational(plus * plus, 8L * p);
    const Rational e2 = make_rational(minus * minus, 8L * p);
    if (e1 <= top) terms.emplace_back(e1, Rational(1));
    if (e2 <= top) terms.emplace_back(e2, Rational(-1));
  }
  const PuiseuxSeries numerator = PuiseuxSeries::from_terms(terms, start, top);
  return (dedekind_eta(order).inverse() * numerator).compacted();
}

TwoVarSeries affine_su2_character(int k, int l, int order) {
  validate_label(AffineLabel{k, l});
  check_order(order);
  const int big_k = k + 2;
  const Rational base = make_rational((l + 1) * (l + 1), 4L * big_k);
  const auto len = static_cast<std::size_t>(order) + 1;

  std::vector<LaurentZ> num(len);
  add_theta(num, big_k, l + 1, base, 1);
  add_theta(num, big_k, -l - 1, base, -1);

  std::vector<LaurentZ> den(len);
  add_theta(den, 2, 1, rat(1, 8), 1);
  add_theta(den, 2, -1, rat(1, 8), -1);

  std::vector<LaurentZ> x(len);
  for (std::size_t n = 0; n < len; ++n) {
    LaurentZ rhs = num[n];
    for (std::size_t d = 1; d <= n; ++d) {
      if (den[d].empty() || x[n - d].empty()) continue;
      add_scaled(rhs, multiply(den[d], x[n - d]), Rational(-1));
    }
    x[n] = divide_by_z_half_difference(rhs);
  }
  return from_integer_steps(base - rat(1, 8), x);
}

TwoVarSeries u1_character(int k, int m, int order) {
  validate_label(U1Label{k, m});
  check_order(order);
  const Rational base = make_rational(m * m, 4L * k);
  std::vector<LaurentZ> theta(static_cast<std::size_t>(order) + 1);
  add_theta(theta, k, m, base, 1);
  return dedekind_eta(order).inverse() * from_integer_steps(base, theta);
}

namespace {

// Affine characters are reused for every m of a level; computing them once
// per (k, l, order) keeps target generation cheap.
TwoVarSeries cached_affine(int k, int l, int order) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, TwoVarSeries> cache;
  const auto key = std::make_tuple(k, l, order);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  TwoVarSeries chi = affine_su2_character(k, l, order);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(chi)).first->second;
}

}  // namespace

PuiseuxSeries coset_character(int k, int l, int m, int order) {
  validate_label(CosetLabel{k, l, m});
  check_order(order);
  // z^(m/2) first appears a bounded number of q-steps above the affine
  // leading term; k + 2 steps cover every m in range.
  const TwoVarSeries chi = cached_affine(k, l, order + k + 2);
  const PuiseuxSeries component = chi.z_coefficient(m);
  const auto lead = component.leading_exponent();
  if (!lead) throw TruncationError("z^(m/2) component not reached for " + coset_name({k, l, m}));
  const Rational top = *lead + order;
  if (component.known_top() < top) throw TruncationError("affine character too short for " + coset_name({k, l, m}));
  const PuiseuxSeries string_fn = component.trimmed().truncated(top);
  return (dedekind_eta(order) * string_fn).shifted(-make_rational(m * m, 4L * k)).compacted();
}

PuiseuxSeries character_series(const CharacterLabel& label, int order) {
  return std::visit(Overloaded{
                        [&](const MinimalLabel& v) { return minimal_character(v.p, v.s, order); },
                        [&](const CosetLabel& v) { return coset_character(v.k, v.l, v.m, order); },
                        [&](const auto& v) -> PuiseuxSeries {
                          throw LabelError(label_name(v) + " is a two-variable character");
                        },
                    },
                    label);
}

CosetLabel canonical_coset_label(const CosetLabel& label) {
  validate_label(label);
  const int k = label.k;
  const CosetLabel orbit[] = {
      {k, label.l, normalize_m(label.m, k)},
      {k, label.l, normalize_m(-label.m, k)},
      {k, k - label.l, normalize_m(label.m + k, k)},
      {k, k - label.l, normalize_m(-label.m + k, k)},
  };
  const CosetLabel* best = nullptr;
  for (const auto& c : orbit) {
    if (c.m < 0) continue;
    if (!best || std::tie(c.l, c.m) < std::tie(best->l, best->m)) best = &c;
  }
  return *best;
}

std::vector<TargetCombination> predicted_combinations(int k) {
  if (k < 1) throw InputError("k must be positive");
  const int l_max = k % 2 == 0 ? k / 2 : (k + 1) / 2;
  std::vector<TargetCombination> out;
  auto seen = [&](const TargetCombination& t) {
    return std::any_of(out.begin(), out.end(), [&](const TargetCombination& o) { return o.name == t.name; });
  };
  for (int l = 0; l <= l_max; ++l) {
    std::map<CosetLabel, int> mult;
    for (int m = -k + 1; m <= k; ++m) {
      if ((l + m) % 2 != 0) continue;
      ++mult[canonical_coset_label({k, l, m})];
    }
    std::vector<std::pair<CharacterLabel, int>> terms;
    for (const auto& [label, n] : mult) terms.emplace_back(label, n);
    auto t = make_combination(std::move(terms));
    if (!seen(t)) out.push_back(std::move(t));
  }
  if (k % 2 == 0 && k >= 4) {
    const std::size_t full = out.size();
    for (std::size_t i = 0; i < full; ++i) {
      int g = 0;
      for (const auto& term : out[i].terms) g = std::gcd(g, term.second);
      if (g <= 1) continue;
      auto terms = out[i].terms;
      for (auto& term : terms) term.second /= g;
      auto t = make_combination(std::move(terms));
      if (!seen(t)) out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<TargetCombination> minimal_targets(int n) {
  if (n < 1) throw InputError("n must be positive");
  std::vector<TargetCombination> out;
  for (int s = 1; s <= n + 1; ++s) out.push_back(make_combination({{MinimalLabel{2 * n + 3, s}, 1}}));
  return out;
}

PuiseuxSeries combination_series(const TargetCombination& target, int order) {
  if (target.terms.empty()) throw LabelError("empty character combination");
  std::vector<PuiseuxSeries> parts;
  for (const auto& [label, mult] : target.terms) {
    parts.push_back(character_series(label, order).scaled(Rational(mult)));
  }
  std::int64_t n = 1;
  for (const auto& s : parts) {
    n = lcm_int64(n, s.lattice_den());
    n = lcm_int64(n, to_int64(Integer(Rational(s.offset() - parts.front().offset()).get_den())));
  }
  PuiseuxSeries sum = parts.front().rescaled(n);
  for (std::size_t i = 1; i < parts.size(); ++i) sum = sum + parts[i].rescaled(n);
  return sum.compacted();
}

}  // namespace nahm
