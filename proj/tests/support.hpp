#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "nfagen/chain.hpp"
#include "nfagen/nfa.hpp"
#include "nfagen/random.hpp"

namespace nfagen::testing {

// 1-based triples, as drawn in figures.
struct Edge {
  int from;
  char letter;
  int to;
};

inline Nfa make_nfa(int n, int k, std::vector<int> initial, std::vector<int> final_states,
                    std::vector<Edge> edges) {
  Nfa a(n, Alphabet(k));
  for (int q : initial) a.set_initial(q - 1);
  for (int q : final_states) a.set_final(q - 1);
  for (const Edge& e : edges) a.add_transition(e.from - 1, e.letter - 'a', e.to - 1);
  return a;
}

// The left automaton of the two-isomorphic-automata figure.
inline Nfa figure_two_left() {
  return make_nfa(4, 2, {1}, {4},
                  {{1, 'a', 2}, {2, 'b', 3}, {3, 'b', 2}, {3, 'a', 4}, {4, 'b', 4}, {4, 'a', 1}});
}

// The right automaton, drawn with states renamed by 1->2, 2->3, 3->4, 4->1.
inline Nfa figure_two_right() {
  return make_nfa(4, 2, {2}, {1},
                  {{2, 'a', 3}, {3, 'b', 4}, {4, 'b', 3}, {4, 'a', 1}, {1, 'b', 1}, {1, 'a', 2}});
}

inline Permutation figure_two_map() { return Permutation({1, 2, 3, 0}); }

// Automaton of the class-examples figure (top).
inline Nfa class_example_top() {
  return make_nfa(3, 2, {1}, {3},
                  {{1, 'a', 2},
                   {1, 'a', 3},
                   {1, 'b', 1},
                   {2, 'a', 3},
                   {2, 'b', 3},
                   {2, 'a', 1},
                   {2, 'b', 1}});
}

inline Permutation random_permutation(int n, Rng& rng) {
  std::vector<State> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(std::move(image));
}

// Independent Bernoulli components.
inline Nfa random_nfa(int n, int k, Rng& rng, double p_edge = 0.3, double p_init = 0.3,
                      double p_final = 0.4) {
  Nfa a(n, Alphabet(k));
  std::bernoulli_distribution e(p_edge), i(p_init), f(p_final);
  for (State q = 0; q < n; ++q) {
    a.set_initial(q, i(rng));
    a.set_final(q, f(rng));
  }
  for (State p = 0; p < n; ++p) {
    for (Letter x = 0; x < k; ++x) {
      for (State q = 0; q < n; ++q) a.set_transition(p, x, q, e(rng));
    }
  }
  return a;
}

// A member of `c` obtained by running the plain chain for a random number of
// steps, which gives a spread of automorphism group sizes.
inline Nfa random_member(const ClassSpec& c, int n, int k, Rng& rng, int max_steps) {
  Nfa x = chain_start(c, n, Alphabet(k));
  const ChainParams params = default_params(c);
  const int steps = std::uniform_int_distribution<int>(0, max_steps)(rng);
  for (int t = 0; t < steps; ++t) x = step(x, c, params, rng);
  return x;
}

}  // namespace nfagen::testing
