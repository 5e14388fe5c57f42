#pragma once

#include <span>
#include <vector>

#include "nfagen/nfa.hpp"

namespace nfagen {

// A deterministic automaton with a partial transition function. State 0 is
// the initial state; kNoState marks an undefined transition.
class Dfa {
 public:
  static constexpr State kNoState = -1;

  Dfa(int num_states, Alphabet alphabet);

  int num_states() const { return static_cast<int>(final_.size()); }
  const Alphabet& alphabet() const { return alphabet_; }
  State initial() const { return 0; }
  bool is_final(State q) const { return final_[q]; }
  State next(State q, Letter a) const { return delta_[slot(q, a)]; }
  bool is_complete() const;

  void set_final(State q, bool value = true) { final_[q] = value; }
  void set_next(State q, Letter a, State target) { delta_[slot(q, a)] = target; }

  bool accepts(std::span<const Letter> word) const;

 private:
  std::size_t slot(State q, Letter a) const {
    return static_cast<std::size_t>(q) * alphabet_.size() + a;
  }

  Alphabet alphabet_;
  std::vector<bool> final_;
  std::vector<State> delta_;
};

// Subset construction restricted to subsets reachable from I. The empty
// subset only becomes a state when it is the initial subset.
Dfa determinize(const Nfa& a);

struct MinimizationResult {
  Dfa dfa;  // minimal complete DFA, accessible part only
  // Size of `dfa`. This is the number the experiments report.
  int complete_size;
  // Size once the dead state (empty residual language), if any, is dropped.
  int trim_size;
  // True iff the input needed a sink to become complete.
  bool sink_added;
};

// Completes `d` with a sink when it is partial, then merges equivalent states
// by Moore partition refinement.
MinimizationResult minimize(const Dfa& d);

bool nfa_accepts(const Nfa& a, std::span<const Letter> word);

}  // namespace nfagen
