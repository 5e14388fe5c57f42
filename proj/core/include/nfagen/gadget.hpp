#pragma once

#include <vector>

#include "nfagen/isomorphism.hpp"
#include "nfagen/nfa.hpp"

namespace nfagen {

// The tailed automaton A_r^{Q'} pins the states of Q' and the state r with
// a0-tails of pairwise distinct lengths:
//   |Q| + 1 + sigma(p) for p in Q',  |Q| + |Q'| + 2 for r,  |Q| + 1 otherwise.
struct GadgetSpec {
  Nfa base;
  std::vector<State> fixed;  // Q', in the order that defines sigma (1, 2, ...)
  State pinned;              // r, not in Q'
  Letter a0 = 0;

  // Q' in increasing state order, which makes sigma increasing.
  static GadgetSpec with_sorted_fixed(Nfa base, std::vector<State> fixed, State pinned,
                                      Letter a0 = 0);

  int tail_bound() const { return base.num_states() + static_cast<int>(fixed.size()) + 2; }
  // Tail length of base state p.
  int tail_length(State p) const;
};

// States 0..n-1 are the base states. The tail of p occupies a consecutive
// block after them, base states in increasing order, (p, 1) first.
// Throws std::invalid_argument when r is in Q', Q' has repeats or states out
// of range, or the base is not trim.
Nfa build_gadget(const GadgetSpec& g);

struct ViaIsoCount {
  AutCount order;
  // d_i for the states unpinned in order n-1, ..., 0.
  std::vector<int> orbit_sizes;
};

// |Aut(a)| as a product of orbit sizes, each counted with isomorphism tests
// between gadgets: starting from Q' = Q, unpin one state q at a time and
// count the p in Q \ Q'' with A_q^{Q''} isomorphic to A_p^{Q''}.
// Throws std::invalid_argument when `a` is not trim.
ViaIsoCount count_automorphisms_via_iso(const Nfa& a, Letter a0 = 0);

}  // namespace nfagen
