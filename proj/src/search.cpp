#include "nahm/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "nahm/liealg.hpp"

namespace nahm {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

constexpr std::size_t kBatchSize = 1 << 16;

// Prefilter: a double evaluation can only reject when the residual clearly
// exceeds its own rounding scale.
constexpr double kPrefilterRelTol = 1e-9;

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<int> sorted_denominators(const std::vector<int>& d) {
  std::vector<int> out = d;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

MatrixQ family_matrix(const SearchFamily& family) {
  return std::visit(Overloaded{
                        [](const MinimalFamily& f) { return minimal_family_matrix(f.n); },
                        [](const CosetFamily& f) { return coset_family_matrix(f.k); },
                        [](const ExplicitFamily& f) { return f.A; },
                    },
                    family);
}

std::vector<TargetCombination> family_targets(const SearchFamily& family) {
  return std::visit(Overloaded{
                        [](const MinimalFamily& f) { return minimal_targets(f.n); },
                        [](const CosetFamily& f) { return predicted_combinations(f.k); },
                        [](const ExplicitFamily& f) { return f.targets; },
                    },
                    family);
}

std::string family_name(const SearchFamily& family) {
  return std::visit(Overloaded{
                        [](const MinimalFamily& f) { return "minimal:n=" + std::to_string(f.n); },
                        [](const CosetFamily& f) { return "coset:k=" + std::to_string(f.k); },
                        [](const ExplicitFamily&) { return std::string("explicit"); },
                    },
                    family);
}

void SearchConfig::validate() const {
  std::visit(Overloaded{
                 [](const MinimalFamily& f) {
                   if (f.n < 1) throw InputError("minimal family needs n >= 1");
                 },
                 [](const CosetFamily& f) {
                   if (f.k < 2) throw InputError("coset family needs k >= 2");
                 },
                 [](const ExplicitFamily& f) {
                   if (f.targets.empty()) throw InputError("explicit family needs at least one target");
                   NahmDatum{f.A, std::vector<Rational>(f.A.rows()), Rational(0)}.validate();
                 },
             },
             family);
  if (range && range->lo > range->hi) throw InputError("empty search range");
  if (denominators.empty()) throw InputError("no denominators given");
  for (int d : denominators) {
    if (d < 1) throw InputError("denominators must be positive");
  }
  if (order < 0) throw InputError("order must be nonnegative");
  precision.validate();
}

SearchRange SearchConfig::effective_range(std::size_t rank) const {
  if (range) return *range;
  if (rank >= 4) return {Rational(-2), Rational(2)};
  return {Rational(-8), Rational(8)};
}

std::vector<Rational> Candidate::B() const {
  std::vector<Rational> out;
  out.reserve(numerators.size());
  for (long n : numerators) out.push_back(make_rational(n, denominator));
  return out;
}

void for_each_candidate(const SearchConfig& cfg, std::size_t rank, const std::function<void(const Candidate&)>& visit) {
  if (rank == 0) return;
  const SearchRange range = cfg.effective_range(rank);
  const std::vector<int> dens = sorted_denominators(cfg.denominators);
  for (int d : dens) {
    const long lo = ceil(Rational(range.lo * d)).get_si();
    const long hi = floor(Rational(range.hi * d)).get_si();
    if (lo > hi) continue;
    Candidate c{d, std::vector<long>(rank, lo)};
    while (true) {
      long l = 1;
      for (long n : c.numerators) l = lcm_long(l, d / std::gcd(std::labs(n), static_cast<long>(d)));
      const int owner = *std::find_if(dens.begin(), dens.end(), [&](int e) { return e % l == 0; });
      if (owner == d) visit(c);
      std::size_t i = rank;
      while (i > 0 && c.numerators[i - 1] == hi) c.numerators[--i] = lo;
      if (i == 0) break;
      ++c.numerators[i - 1];
    }
  }
}

std::vector<Candidate> enumerate_candidates(const SearchConfig& cfg, std::size_t rank) {
  std::vector<Candidate> out;
  for_each_candidate(cfg, rank, [&](const Candidate& c) { out.push_back(c); });
  return out;
}

ScreenResult screen_candidate(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol,
                              const ScreenConfig& screen, const PrecisionConfig& precision) {
  ScreenResult out;
  out.residual = asymptotic_residual(a, b, sol);
  const AsymptoticC c = asymptotic_C(a, b, sol, screen, precision);
  out.c_value = c.value;
  out.C = c.rational;
  out.pass = abs(out.residual) <= pow10_neg(screen.filter_digits(precision)) && out.C.has_value();
  return out;
}

std::vector<PreparedTarget> prepare_targets(const std::vector<TargetCombination>& targets, int order) {
  std::vector<PreparedTarget> out;
  out.reserve(targets.size());
  for (const auto& t : targets) out.push_back({t, combination_series(t, order)});
  return out;
}

bool series_match(const PuiseuxSeries& f, const PuiseuxSeries& target, int order) {
  const auto lf = f.leading_exponent();
  const auto lt = target.leading_exponent();
  if (!lf || !lt || *lf != *lt) return false;
  return agree_through(f, target, *lf + order);
}

std::optional<TargetCombination> match_series(const PuiseuxSeries& f, const std::vector<PreparedTarget>& targets,
                                              int order) {
  const PreparedTarget* found = nullptr;
  for (const auto& t : targets) {
    if (!series_match(f, t.series, order)) continue;
    if (found) {
      throw AmbiguousMatchError("series matches both " + found->target.name + " and " + t.target.name +
                                " at order " + std::to_string(order));
    }
    found = &t;
  }
  if (!found) return std::nullopt;
  return found->target;
}

namespace {

struct BatchContext {
  const MatrixQ& a;
  const TBASolution& sol;
  const AsymptoticPolynomials& poly;
  const std::vector<PreparedTarget>& targets;
  const SearchConfig& cfg;
};

struct BatchOutcome {
  std::size_t prefilter_passed = 0;
  std::size_t screened = 0;
  std::vector<MatchRecord> records;
};

void process_one(const BatchContext& ctx, const Candidate& cand, BatchOutcome& out) {
  const std::size_t r = cand.numerators.size();
  double t[64];
  std::vector<double> heap;
  double* tp = t;
  if (r > 64) {
    heap.resize(r);
    tp = heap.data();
  }
  for (std::size_t i = 0; i < r; ++i) tp[i] = static_cast<double>(cand.numerators[i]) / cand.denominator - 0.5;
  double magnitude = 0;
  const double value = ctx.poly.residual_double(tp, &magnitude);
  if (std::abs(value) > kPrefilterRelTol * std::max(1.0, magnitude)) return;
  ++out.prefilter_passed;

  const std::vector<Rational> b = cand.B();
  const ScreenResult s = screen_candidate(ctx.a, b, ctx.sol, ctx.cfg.screen, ctx.cfg.precision);
  if (!s.pass) return;
  ++out.screened;

  const PuiseuxSeries f = nahm_sum(NahmDatum{ctx.a, b, *s.C}, ctx.cfg.order);
  const auto match = match_series(f, ctx.targets, ctx.cfg.order);
  if (!match) return;
  out.records.push_back(MatchRecord{b, *s.C, match->name, ctx.cfg.order, cand.denominator, s.c_value, abs(s.residual)});
}

BatchOutcome process_batch(const BatchContext& ctx, const std::vector<Candidate>& batch, unsigned jobs) {
  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  BatchOutcome total;
  std::exception_ptr failure;
  std::atomic<bool> stop{false};

  auto worker = [&] {
    BatchOutcome local;
    try {
      constexpr std::size_t kChunk = 256;
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= batch.size()) break;
        const std::size_t end = std::min(batch.size(), begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) process_one(ctx, batch[i], local);
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
    std::lock_guard lock(merge_mutex);
    total.prefilter_passed += local.prefilter_passed;
    total.screened += local.screened;
    for (auto& rec : local.records) total.records.push_back(std::move(rec));
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw SearchAborted(e.what(), std::move(total.records));
    }
  }
  return total;
}

void sort_records(std::vector<MatchRecord>& records) {
  std::sort(records.begin(), records.end(), [](const MatchRecord& x, const MatchRecord& y) {
    if (x.denominator != y.denominator) return x.denominator < y.denominator;
    return lex_less(x.B, y.B);
  });
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg) {
  cfg.validate();
  const PrecisionScope scope(static_cast<unsigned>(cfg.precision.working_digits));
  const MatrixQ a = family_matrix(cfg.family);
  const std::vector<TargetCombination> targets = family_targets(cfg.family);
  const TBASolution sol = solve_tba(a, cfg.precision);
  const AsymptoticPolynomials poly(sol);
  const std::vector<PreparedTarget> prepared = prepare_targets(targets, cfg.order);
  const unsigned jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
  const BatchContext ctx{a, sol, poly, prepared, cfg};

  SearchResult result;
  for (int d : sorted_denominators(cfg.denominators)) result.stats.push_back({d, 0, 0, 0, 0});
  auto stats_for = [&](int d) -> DenominatorStats& {
    return *std::find_if(result.stats.begin(), result.stats.end(), [&](const auto& s) { return s.denominator == d; });
  };

  std::vector<Candidate> batch;
  batch.reserve(kBatchSize);
  auto flush = [&] {
    if (batch.empty()) return;
    BatchOutcome out;
    try {
      out = process_batch(ctx, batch, jobs);
    } catch (SearchAborted& e) {
      std::vector<MatchRecord> partial = result.records;
      partial.insert(partial.end(), e.partial().begin(), e.partial().end());
      sort_records(partial);
      throw SearchAborted(e.what(), std::move(partial));
    }
    // A batch never straddles denominators, see below.
    DenominatorStats& st = stats_for(batch.front().denominator);
    st.prefilter_passed += out.prefilter_passed;
    st.screened += out.screened;
    st.matches += out.records.size();
    for (auto& rec : out.records) result.records.push_back(std::move(rec));
    batch.clear();
  };

  for_each_candidate(cfg, a.rows(), [&](const Candidate& c) {
    if (!batch.empty() && batch.front().denominator != c.denominator) flush();
    ++stats_for(c.denominator).candidates;
    batch.push_back(c);
    if (batch.size() >= kBatchSize) flush();
  });
  flush();
  sort_records(result.records);

  if (cfg.reverify) {
    for (const auto& rec : result.records) {
      if (!reverify(rec, a, targets, cfg.order + 5)) {
        throw SearchAborted("match for B=" + to_string(rec.B.front()) + ",... failed re-verification at order " +
                                std::to_string(cfg.order + 5),
                            result.records);
      }
    }
  }
  return result;
}

bool reverify(const MatchRecord& record, const MatrixQ& a, const std::vector<TargetCombination>& targets, int order) {
  const auto it = std::find_if(targets.begin(), targets.end(),
                               [&](const TargetCombination& t) { return t.name == record.matched; });
  if (it == targets.end()) return false;
  const PuiseuxSeries f = nahm_sum(NahmDatum{a, record.B, record.C}, order);
  return series_match(f, combination_series(*it, order), order);
}

std::vector<std::vector<Rational>> known_B_minimal(int n) {
  if (n < 1) throw InputError("n must be positive");
  std::vector<std::vector<Rational>> out;
  for (int j = 0; j <= n; ++j) {
    std::vector<Rational> b(static_cast<std::size_t>(n), Rational(0));
    for (int i = 1; i <= j; ++i) b[static_cast<std::size_t>(n - j + i - 1)] = i;
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<std::vector<Rational>> known_B_coset(int k) {
  if (k < 2) throw InputError("k must be at least 2");
  const MatrixQ inv = invert(cartan_matrix(DynkinSpec(DynkinFamily::A, k - 1)));
  const auto r = static_cast<std::size_t>(k - 1);
  std::vector<std::vector<Rational>> out{std::vector<Rational>(r, Rational(0))};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<Rational> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = -inv(i, j);
    out.push_back(std::move(col));
  }
  return out;
}

NahmDatum dual_transform(const NahmDatum& datum) {
  if (!datum.A.is_square() || datum.B.size() != datum.A.rows()) throw InputError("A and B have inconsistent shapes");
  const MatrixQ inv = invert(datum.A);
  std::vector<Rational> b_star = inv * datum.B;
  const Rational r(static_cast<long>(datum.A.rows()));
  Rational c_star = dot(datum.B, b_star) / 2 - r / 24 - datum.C;
  return NahmDatum{inv, std::move(b_star), std::move(c_star)};
}

FamilyIdentity infinite_family_identity(int j, FamilyVariant variant, int order, const PrecisionConfig& precision) {
  precision.validate();
  const PrecisionScope scope(static_cast<unsigned>(precision.working_digits));
  const MatrixQ a = coset_family_matrix(4);
  const Rational head = variant == FamilyVariant::Even ? make_rational(3L * j, 2) : make_rational(3L * j + 1, 2);
  const std::vector<Rational> b{head, Rational(0), Rational(-head)};
  const TBASolution sol = solve_tba(a, precision);
  const AsymptoticC c = asymptotic_C(a, b, sol, ScreenConfig{}, precision);
  if (!c.rational) throw ConvergenceError("C did not reconstruct for the family member", to_short_string(c.value));
  PuiseuxSeries lhs = nahm_sum(NahmDatum{a, b, *c.rational}, order);
  const Rational shift = variant == FamilyVariant::Even ? Rational(0) : make_rational(1, 3);
  PuiseuxSeries rhs = (dedekind_eta(order).inverse() * theta_lattice(make_rational(3, 4), shift, order)).compacted();
  const bool equal = series_match(lhs, rhs, order);
  return FamilyIdentity{b, *c.rational, std::move(lhs), std::move(rhs), equal};
}

}  // namespace nahm
