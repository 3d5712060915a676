#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nahm/qseries.hpp"
#include "nahm/twovar.hpp"

namespace nahm {

struct MinimalLabel {
  int p;
  int s;
  auto operator<=>(const MinimalLabel&) const = default;
};

struct AffineLabel {
  int k;
  int l;
  auto operator<=>(const AffineLabel&) const = default;
};

struct U1Label {
  int k;
  int m;
  auto operator<=>(const U1Label&) const = default;
};

struct CosetLabel {
  int k;
  int l;
  int m;
  auto operator<=>(const CosetLabel&) const = default;
};

using CharacterLabel = std::variant<MinimalLabel, AffineLabel, U1Label, CosetLabel>;

// "minimal:p=5,s=1", "affine:k=2,l=1", "u1:k=2,m=0", "coset:k=4,l=2,m=0".
std::string label_name(const CharacterLabel& label);
// Inverse of label_name. Throws ParseError.
CharacterLabel parse_label(const std::string& text);
// Throws LabelError when the label is out of range.
void validate_label(const CharacterLabel& label);

struct TargetCombination {
  std::vector<std::pair<CharacterLabel, int>> terms;
  std::string name;
};

// Builds the display name ("2*coset:k=2,l=1,m=1", terms joined by '+').
// Throws LabelError on an empty list or nonpositive multiplicity.
TargetCombination make_combination(std::vector<std::pair<CharacterLabel, int>> terms);

// Normalized characters; `order` counts powers of q above the leading one.
PuiseuxSeries minimal_character(int p, int s, int order);
TwoVarSeries affine_su2_character(int k, int l, int order);
TwoVarSeries u1_character(int k, int m, int order);
PuiseuxSeries coset_character(int k, int l, int m, int order);
PuiseuxSeries character_series(const CharacterLabel& label, int order);

// Representative of {l;m} under field identification and m -> -m:
// the smallest (l, m) with 0 <= m <= k.
CosetLabel canonical_coset_label(const CosetLabel& label);

std::vector<TargetCombination> predicted_combinations(int k);
std::vector<TargetCombination> minimal_targets(int n);

// sum of multiplicity * character, known through the smallest known top.
PuiseuxSeries combination_series(const TargetCombination& target, int order);

}  // namespace nahm
