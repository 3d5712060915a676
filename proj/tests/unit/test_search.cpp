#include <doctest.h>

#include <random>

#include "nahm/json_io.hpp"
#include "nahm/liealg.hpp"
#include "nahm/search.hpp"

using namespace nahm;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

std::vector<std::string> b_strings(const std::vector<Candidate>& cs) {
  std::vector<std::string> out;
  for (const Candidate& c : cs) {
    std::string s;
    for (const Rational& b : c.B()) s += (s.empty() ? "" : ",") + to_string(b);
    out.push_back(s);
  }
  return out;
}

SearchConfig config(SearchFamily family, long lo, long hi, std::vector<int> denoms) {
  SearchConfig cfg;
  cfg.family = std::move(family);
  cfg.range = SearchRange{R(lo), R(hi)};
  cfg.denominators = std::move(denoms);
  return cfg;
}

}  // namespace

TEST_CASE("candidate enumeration") {
  SearchConfig cfg = config(MinimalFamily{1}, -1, 1, {1, 2});
  CHECK(b_strings(enumerate_candidates(cfg, 1)) == std::vector<std::string>{"-1", "0", "1", "-1/2", "1/2"});
  cfg.denominators = {1};
  CHECK(enumerate_candidates(cfg, 2).size() == 9);
  cfg.denominators = {2, 4};
  const auto quarters = b_strings(enumerate_candidates(cfg, 1));
  CHECK(quarters.size() == 9);
  CHECK(std::count(quarters.begin(), quarters.end(), "1/2") == 1);
  CHECK(enumerate_candidates(cfg, 1).back().denominator == 4);

  SearchConfig defaults;
  CHECK(defaults.effective_range(3).lo == -8);
  CHECK(defaults.effective_range(4).hi == 2);
  SearchConfig bad = config(MinimalFamily{1}, 1, -1, {1});
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = config(MinimalFamily{1}, -1, 1, {});
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = config(MinimalFamily{1}, -1, 1, {0});
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("screening") {
  PrecisionScope scope(60);
  const PrecisionConfig p;
  const ScreenConfig screen;
  const MatrixQ a2{{R(2)}};
  const TBASolution s2 = solve_tba(a2, p);
  const ScreenResult ok = screen_candidate(a2, {R(0)}, s2, screen, p);
  CHECK(ok.pass);
  CHECK(*ok.C == R(-1, 60));
  CHECK_FALSE(screen_candidate(a2, {R(1, 3)}, s2, screen, p).pass);
  const MatrixQ a1{{R(1)}};
  const ScreenResult half = screen_candidate(a1, {R(-1, 2)}, solve_tba(a1, p), screen, p);
  CHECK(half.pass);
  CHECK(*half.C == R(1, 24));
}

TEST_CASE("matching") {
  const auto targets = prepare_targets(minimal_targets(1), 20);
  const PuiseuxSeries f = nahm_sum(NahmDatum{MatrixQ{{R(2)}}, {R(1)}, R(11, 60)}, 20);
  const auto m = match_series(f, targets, 20);
  REQUIRE(m.has_value());
  CHECK(m->name == "minimal:p=5,s=1");

  const PuiseuxSeries g = nahm_sum(NahmDatum{MatrixQ{{R(2)}}, {R(0)}, R(-1, 60)}, 20);
  const std::vector<PreparedTarget> only_first{targets[0]};
  CHECK_FALSE(match_series(g, only_first, 20).has_value());
  // Right shape, wrong C.
  CHECK_FALSE(match_series(nahm_sum(NahmDatum{MatrixQ{{R(2)}}, {R(0)}, R(0)}, 20), targets, 20).has_value());

  const auto k4 = prepare_targets(predicted_combinations(4), 20);
  const PuiseuxSeries h = nahm_sum(NahmDatum{coset_family_matrix(4), {R(-1, 4), R(-1, 2), R(-3, 4)}, R(1, 48)}, 20);
  const auto mk = match_series(h, k4, 20);
  REQUIRE(mk.has_value());
  CHECK(mk->name == "2*coset:k=4,l=1,m=1+2*coset:k=4,l=1,m=3");

  const std::vector<PreparedTarget> twice{targets[1], targets[1]};
  CHECK_THROWS_AS(match_series(g, twice, 20), AmbiguousMatchError);
}

TEST_CASE("small searches") {
  const SearchResult r1 = run_search(config(MinimalFamily{1}, -5, 5, {1}));
  REQUIRE(r1.records.size() == 2);
  CHECK(r1.records[0].B == std::vector<Rational>{R(0)});
  CHECK(r1.records[0].C == R(-1, 60));
  CHECK(r1.records[0].matched == "minimal:p=5,s=2");
  CHECK(r1.records[1].B == std::vector<Rational>{R(1)});
  CHECK(r1.records[1].matched == "minimal:p=5,s=1");
  REQUIRE(r1.stats.size() == 1);
  CHECK(r1.stats[0].candidates == 11);
  CHECK(r1.stats[0].matches == 2);

  const SearchResult r2 = run_search(config(CosetFamily{2}, -2, 2, {1, 2}));
  REQUIRE(r2.records.size() == 2);
  CHECK(r2.records[0].B == std::vector<Rational>{R(0)});
  CHECK(r2.records[0].C == R(-1, 48));
  CHECK(r2.records[1].B == std::vector<Rational>{R(-1, 2)});
  CHECK(r2.records[1].C == R(1, 24));
  CHECK(r2.records[1].matched == "2*coset:k=2,l=1,m=1");
  for (const MatchRecord& rec : r2.records) CHECK(reverify(rec, coset_family_matrix(2), family_targets(CosetFamily{2}), 25));
}

TEST_CASE("searches are deterministic across job counts") {
  SearchConfig cfg = config(CosetFamily{3}, -2, 2, {1, 3});
  cfg.jobs = 1;
  const std::string one = records_to_json(run_search(cfg).records).dump(2);
  cfg.jobs = 4;
  const std::string four = records_to_json(run_search(cfg).records).dump(2);
  CHECK(one == four);
  CHECK(one.size() > 10);
}

TEST_CASE("known B catalogues") {
  CHECK(known_B_minimal(1) == std::vector<std::vector<Rational>>{{R(0)}, {R(1)}});
  CHECK(known_B_minimal(3) == std::vector<std::vector<Rational>>{
                                  {R(0), R(0), R(0)}, {R(0), R(0), R(1)}, {R(0), R(1), R(2)}, {R(1), R(2), R(3)}});
  for (int n = 1; n <= 6; ++n) CHECK(known_B_minimal(n).size() == static_cast<std::size_t>(n + 1));
  CHECK(known_B_coset(2) == std::vector<std::vector<Rational>>{{R(0)}, {R(-1, 2)}});
  CHECK(known_B_coset(4) == std::vector<std::vector<Rational>>{{R(0), R(0), R(0)},
                                                               {R(-3, 4), R(-1, 2), R(-1, 4)},
                                                               {R(-1, 2), R(-1), R(-1, 2)},
                                                               {R(-1, 4), R(-1, 2), R(-3, 4)}});

  PrecisionScope scope(60);
  const PrecisionConfig p;
  const ScreenConfig screen;
  for (int n = 1; n <= 3; ++n) {
    const MatrixQ a = minimal_family_matrix(n);
    const TBASolution s = solve_tba(a, p);
    for (const auto& b : known_B_minimal(n)) CHECK(screen_candidate(a, b, s, screen, p).pass);
  }
  for (int k = 2; k <= 5; ++k) {
    const MatrixQ a = coset_family_matrix(k);
    const TBASolution s = solve_tba(a, p);
    for (const auto& b : known_B_coset(k)) CHECK(screen_candidate(a, b, s, screen, p).pass);
  }
}

TEST_CASE("duality") {
  const NahmDatum self{MatrixQ{{R(1)}}, {R(0)}, R(-1, 48)};
  const NahmDatum d = dual_transform(self);
  CHECK(d.A == self.A);
  CHECK(d.B == self.B);
  CHECK(d.C == self.C);

  for (int k = 2; k <= 6; ++k) {
    const MatrixQ a = coset_family_matrix(k);
    const auto known = known_B_coset(k);
    for (std::size_t col = 1; col < known.size(); ++col) {
      const NahmDatum dual = dual_transform(NahmDatum{a, known[col], R(0)});
      for (std::size_t i = 0; i < dual.B.size(); ++i) CHECK(dual.B[i] == (i + 1 == col ? R(-1, 2) : R(0)));
    }
  }

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6), pick(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixQ a = trial % 2 == 0 ? coset_family_matrix(pick(rng) + 1) : minimal_family_matrix(pick(rng));
    std::vector<Rational> b(a.rows());
    for (Rational& v : b) v = make_rational(num(rng), den(rng));
    const NahmDatum x{a, b, make_rational(num(rng), den(rng))};
    const NahmDatum back = dual_transform(dual_transform(x));
    CHECK(back.A == x.A);
    CHECK(back.B == x.B);
    CHECK(back.C == x.C);
  }
  CHECK_THROWS_AS(dual_transform(NahmDatum{MatrixQ{{R(0)}}, {R(0)}, R(0)}), SingularMatrixError);
}

TEST_CASE("infinite families") {
  for (int j = -2; j <= 2; ++j) {
    for (FamilyVariant v : {FamilyVariant::Even, FamilyVariant::Odd}) {
      const FamilyIdentity id = infinite_family_identity(j, v, 12);
      CHECK(id.equal);
    }
  }
  const FamilyIdentity e1 = infinite_family_identity(1, FamilyVariant::Even, 15);
  CHECK(e1.B == std::vector<Rational>{R(3, 2), R(0), R(-3, 2)});
  const FamilyIdentity o0 = infinite_family_identity(0, FamilyVariant::Odd, 15);
  CHECK(o0.B == std::vector<Rational>{R(1, 2), R(0), R(-1, 2)});
  const auto targets = prepare_targets(predicted_combinations(4), 15);
  const auto m = match_series(o0.lhs, targets, 15);
  REQUIRE(m.has_value());
  CHECK(m->name == "coset:k=4,l=2,m=0+coset:k=4,l=2,m=2");
}
