#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nahm/characters.hpp"
#include "nahm/errors.hpp"
#include "nahm/matrix.hpp"
#include "nahm/nahmsum.hpp"
#include "nahm/tba.hpp"

namespace nahm {

// (A1, T_n): targets are the n+1 characters of the (2n+3, 2) minimal model.
struct MinimalFamily {
  int n;
};

// (A1, A_{k-1}): targets are the predicted coset combinations.
struct CosetFamily {
  int k;
};

struct ExplicitFamily {
  MatrixQ A;
  std::vector<TargetCombination> targets;
};

using SearchFamily = std::variant<MinimalFamily, CosetFamily, ExplicitFamily>;

MatrixQ family_matrix(const SearchFamily& family);
std::vector<TargetCombination> family_targets(const SearchFamily& family);
std::string family_name(const SearchFamily& family);

struct SearchRange {
  Rational lo;
  Rational hi;
};

struct SearchConfig {
  SearchFamily family = MinimalFamily{1};
  // Unset: [-8, 8], or [-2, 2] from rank 4 on.
  std::optional<SearchRange> range;
  std::vector<int> denominators{1, 2, 3, 4};
  int order = kDefaultOrder;
  PrecisionConfig precision;
  ScreenConfig screen;
  unsigned jobs = 1;
  // Recompute both sides of each match at order + 5.
  bool reverify = true;

  void validate() const;
  SearchRange effective_range(std::size_t rank) const;
};

// B = numerators / denominator.
struct Candidate {
  int denominator;
  std::vector<long> numerators;

  std::vector<Rational> B() const;
};

// Grid points of (Z/d)^r in range for each d in increasing order. A vector
// is emitted once, under the smallest listed d whose grid contains it;
// within one d the order is lexicographic.
void for_each_candidate(const SearchConfig& cfg, std::size_t rank, const std::function<void(const Candidate&)>& visit);
std::vector<Candidate> enumerate_candidates(const SearchConfig& cfg, std::size_t rank);

struct ScreenResult {
  bool pass = false;
  std::optional<Rational> C;
  Real c_value;
  Real residual;
};

// Passes when |asymptotic_residual| <= 10^-filter_digits and asymptotic_C
// reconstructs.
ScreenResult screen_candidate(const MatrixQ& a, const std::vector<Rational>& b, const TBASolution& sol,
                              const ScreenConfig& screen, const PrecisionConfig& precision);

struct PreparedTarget {
  TargetCombination target;
  PuiseuxSeries series;
};

std::vector<PreparedTarget> prepare_targets(const std::vector<TargetCombination>& targets, int order);

// True when both series have the same leading exponent and agree through
// `order` powers of q beyond it.
bool series_match(const PuiseuxSeries& f, const PuiseuxSeries& target, int order);

// The unique target equal to f through order T. Throws AmbiguousMatchError
// when more than one target matches.
std::optional<TargetCombination> match_series(const PuiseuxSeries& f, const std::vector<PreparedTarget>& targets,
                                              int order);

struct MatchRecord {
  std::vector<Rational> B;
  Rational C;
  std::string matched;
  int order = kDefaultOrder;
  int denominator = 1;
  Real c_value;
  Real residual;
};

struct DenominatorStats {
  int denominator = 0;
  std::size_t candidates = 0;
  std::size_t prefilter_passed = 0;
  std::size_t screened = 0;
  std::size_t matches = 0;
};

struct SearchResult {
  std::vector<MatchRecord> records;
  std::vector<DenominatorStats> stats;
};

// Thrown when a worker fails; carries the records found before the failure.
class SearchAborted : public Error {
 public:
  SearchAborted(const std::string& what, std::vector<MatchRecord> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<MatchRecord>& partial() const noexcept { return partial_; }

 private:
  std::vector<MatchRecord> partial_;
};

// Records are ordered by (denominator, lexicographic B).
SearchResult run_search(const SearchConfig& cfg);

// Recomputes the Nahm sum and the matched combination at `order` and
// compares them.
bool reverify(const MatchRecord& record, const MatrixQ& a, const std::vector<TargetCombination>& targets, int order);

std::vector<std::vector<Rational>> known_B_minimal(int n);
std::vector<std::vector<Rational>> known_B_coset(int k);

// A* = A^-1, B* = A^-1 B, C* = B.A^-1.B / 2 - r/24 - C.
NahmDatum dual_transform(const NahmDatum& datum);

enum class FamilyVariant { Even, Odd };

struct FamilyIdentity {
  std::vector<Rational> B;
  Rational C;
  PuiseuxSeries lhs;
  PuiseuxSeries rhs;
  bool equal;
};

// k = 4 coset matrix with B = (3j/2, 0, -3j/2) (even) or
// ((3j+1)/2, 0, -(3j+1)/2) (odd) against eta^-1 sum_n q^(3(n+b)^2/4)
// with b = 0 or 1/3.
FamilyIdentity infinite_family_identity(int j, FamilyVariant variant, int order = 15,
                                        const PrecisionConfig& precision = {});

}  // namespace nahm
