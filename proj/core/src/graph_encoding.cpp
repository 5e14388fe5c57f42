#include "nfagen/graph_encoding.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace nfagen {

int letter_weight(Letter a) { return a + 1; }

std::vector<int> EncodedGraph::out_degrees() const {
  std::vector<int> deg(vertices.size(), 0);
  for (const auto& [u, v] : edges) ++deg[u];
  return deg;
}

int EncodedGraph::max_out_degree() const {
  const auto deg = out_degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::string EncodedGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph G {\n";
  for (int v = 0; v < num_vertices(); ++v) {
    const Vertex& x = vertices[v];
    os << "  v" << v + 1 << " [label=\"";
    switch (x.kind) {
      case Kind::kState: os << x.owner + 1 << "\", shape=circle"; break;
      case Kind::kStateClique: os << x.owner + 1 << "." << x.index << "\", shape=point"; break;
      case Kind::kTransition: os << "t" << x.owner + 1 << "\", shape=box"; break;
      case Kind::kTransitionClique:
        os << "t" << x.owner + 1 << "." << x.index << "\", shape=point";
        break;
    }
    os << "];\n";
  }
  for (const auto& [u, v] : edges) os << "  v" << u + 1 << " -> v" << v + 1 << ";\n";
  os << "}\n";
  return os.str();
}

std::string EncodedGraph::to_edge_list() const {
  std::ostringstream os;
  os << "p " << num_vertices() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) os << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

EncodedGraph encode_graph(const Nfa& a) {
  const int n = a.num_states();
  const int k = a.num_letters();
  EncodedGraph g;
  g.num_letters = k;
  std::set<std::pair<int, int>> edges;
  auto add_clique = [&](int first, int size) {
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) edges.emplace(first + i, first + j);
    }
  };

  for (State q = 0; q < n; ++q) g.vertices.push_back({EncodedGraph::Kind::kState, q, 0});
  for (State q = 0; q < n; ++q) {
    const bool i = a.is_initial(q);
    const bool f = a.is_final(q);
    if (!i && !f) continue;
    const int size = k + (i && f ? 3 : (f ? 2 : 1));
    const int first = g.num_vertices();
    for (int j = 1; j <= size; ++j) {
      g.vertices.push_back({EncodedGraph::Kind::kStateClique, q, j});
    }
    edges.emplace(q, first);
    add_clique(first, size);
  }
  const auto transitions = a.transitions();
  const int first_transition = g.num_vertices();
  for (int t = 0; t < static_cast<int>(transitions.size()); ++t) {
    g.vertices.push_back({EncodedGraph::Kind::kTransition, t, 0});
    edges.emplace(transitions[t].from, first_transition + t);
    edges.emplace(first_transition + t, transitions[t].to);
  }
  for (int t = 0; t < static_cast<int>(transitions.size()); ++t) {
    const int size = letter_weight(transitions[t].letter);
    const int first = g.num_vertices();
    for (int j = 1; j <= size; ++j) {
      g.vertices.push_back({EncodedGraph::Kind::kTransitionClique, t, j});
    }
    edges.emplace(first_transition + t, first);
    add_clique(first, size);
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::vector<int> clique_statistic(const EncodedGraph& g) {
  const int n = g.num_vertices();
  std::set<std::pair<int, int>> e(g.edges.begin(), g.edges.end());
  auto linked = [&](int u, int v) { return e.count({u, v}) > 0 && e.count({v, u}) > 0; };
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
  std::vector<bool> looped(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) looped[v] = e.count({v, v}) > 0;
  for (const auto& [u, v] : g.edges) {
    if (u < v && looped[u] && looped[v] && linked(u, v)) {
      nbr[u].push_back(v);
      nbr[v].push_back(u);
    }
  }
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n; ++s) {
    if (!looped[s]) continue;
    // Largest clique among the loop-carrying mutual neighbors of s.
    int best = 0;
    std::vector<int> chosen{s};
    std::function<void(std::vector<int>)> extend = [&](std::vector<int> candidates) {
      best = std::max(best, static_cast<int>(chosen.size()));
      if (chosen.size() + candidates.size() <= static_cast<std::size_t>(best)) return;
      while (!candidates.empty()) {
        const int v = candidates.back();
        candidates.pop_back();
        std::vector<int> rest;
        for (int u : candidates) {
          if (linked(u, v)) rest.push_back(u);
        }
        chosen.push_back(v);
        extend(std::move(rest));
        chosen.pop_back();
      }
    };
    extend(nbr[s]);
    d[s] = best;
  }
  return d;
}

Nfa as_automaton(const EncodedGraph& g) {
  Nfa out(std::max(1, g.num_vertices()), Alphabet(2));
  for (const auto& [u, v] : g.edges) out.add_transition(u, 0, v);
  return out;
}

}  // namespace nfagen
