#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "nfagen/nfa.hpp"

namespace nfagen {

// Isomorphism-invariant fingerprint of one state: for every permutation phi,
// label(phi(A), phi(q)) == label(A, q).
struct LabelVector {
  bool initial = false;
  bool final_state = false;
  bool initial_and_final = false;
  std::vector<int> out_degree;  // per letter
  std::vector<int> in_degree;   // per letter
  // Shortlex-minimal words (letters in alphabet order); nullopt when no
  // final state is reachable / the state is not accessible.
  std::optional<std::string> min_word_to_final;
  std::optional<std::string> min_word_from_initial;

  friend auto operator<=>(const LabelVector&, const LabelVector&) = default;
  friend bool operator==(const LabelVector&, const LabelVector&) = default;

  // Human-readable rendering, e.g. "IF+|out=1,0|in=0,2|to=ab|from=-".
  std::string to_string() const;
};

std::vector<LabelVector> label_states(const Nfa& a);
LabelVector label_state(const Nfa& a, State q);

// States grouped by equal labels; cells ordered by label, states ascending
// inside a cell.
struct Partition {
  std::vector<LabelVector> labels;
  std::vector<std::vector<State>> cells;

  int num_cells() const { return static_cast<int>(cells.size()); }
  bool is_discrete() const;
};

Partition label_partition(const Nfa& a);

}  // namespace nfagen
