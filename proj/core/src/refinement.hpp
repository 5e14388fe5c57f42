#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nfagen/nfa.hpp"

namespace nfagen::detail {

// Adjacency lists of an automaton, viewed as an edge-labeled digraph.
struct Structure {
  explicit Structure(const Nfa& a);

  const Nfa* nfa;
  int n;
  std::vector<std::vector<std::pair<Letter, State>>> out;
  std::vector<std::vector<std::pair<Letter, State>>> in;
};

// A vertex coloring with colors 0..num_colors-1, plus a certificate that is
// equal for two colorings related by an isomorphism.
struct Coloring {
  std::vector<int> color;
  int num_colors = 0;
  std::uint64_t certificate = 0;

  bool is_discrete() const { return num_colors == static_cast<int>(color.size()); }
};

// Initial colorings for a pair of automata: ranks of the state labels taken
// over the union of both label sets. nullopt if the label multisets differ.
std::optional<std::pair<Coloring, Coloring>> initial_colorings(const Nfa& a, const Nfa& b);
Coloring initial_coloring(const Nfa& a);

// Colors from arbitrary comparable keys.
Coloring coloring_from_ranks(const std::vector<int>& keys);

// Iterated color refinement until the partition is stable.
Coloring refine(const Structure& g, Coloring c);

// Gives `v` a color of its own (ordered just before the rest of its cell),
// then refines.
Coloring individualize(const Structure& g, const Coloring& c, State v);

// Smallest non-singleton cell, ties broken by the lowest color.
std::vector<State> target_cell(const Coloring& c);

// Twin classes: u ~ w iff the transposition (u w) is an automorphism.
// Returns, for every vertex, the smallest vertex in its class among
// `candidates` (or itself when not a candidate).
std::vector<State> twin_representatives(const Structure& g, const std::vector<State>& candidates);

// Searches an isomorphism from (g, cg) to (h, ch) that respects the colors;
// both colorings must already be refined. Branches on one vertex per twin
// class of h.
std::optional<Permutation> find_mapping(const Structure& g, const Coloring& cg, const Structure& h,
                                        const Coloring& ch);

}  // namespace nfagen::detail
