#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nfagen/nfa.hpp"

namespace nfagen {

// The digraph G_A. Vertex layout:
//   [0, n)                       states
//   then the clique of every state in I or F (k+1, k+2 or k+3 vertices for
//   I\F, F\I, I&F), states in increasing order
//   then one vertex per transition, in sorted transition order
//   then the clique of every transition (h(a) = rank(a) + 1 vertices).
// Cliques contain all ordered pairs, self-loops included.
struct EncodedGraph {
  enum class Kind { kState, kStateClique, kTransition, kTransitionClique };

  struct Vertex {
    Kind kind;
    int owner;  // state, or transition index
    int index;  // 1-based position inside a clique, 0 otherwise
  };

  int num_letters = 0;
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;  // sorted, no duplicates

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  std::vector<int> out_degrees() const;
  int max_out_degree() const;

  // Graphviz digraph.
  std::string to_dot() const;
  // Header "p <vertices> <edges>", then one "u v" line per edge, 1-based.
  std::string to_edge_list() const;
};

// h(a) = rank of a + 1.
int letter_weight(Letter a);

EncodedGraph encode_graph(const Nfa& a);

// d(s): size of the largest H containing s with H x H inside E (loops
// included), 0 when s has no self-loop.
std::vector<int> clique_statistic(const EncodedGraph& g);

// The digraph as an automaton over a two-letter alphabet using one letter
// only, with I = F = {}; two graphs are isomorphic iff these automata are.
Nfa as_automaton(const EncodedGraph& g);

}  // namespace nfagen
