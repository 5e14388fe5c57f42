#include "nfagen/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nfagen/labeling.hpp"
#include "refinement.hpp"

namespace nfagen {

using detail::Coloring;
using detail::Structure;

std::optional<IsoWitness> are_isomorphic(const Nfa& a, const Nfa& b) {
  auto colorings = detail::initial_colorings(a, b);
  if (!colorings) return std::nullopt;
  if (a.num_transitions() != b.num_transitions()) return std::nullopt;
  const Structure g(a);
  const Structure h(b);
  const Coloring cg = detail::refine(g, std::move(colorings->first));
  const Coloring ch = detail::refine(h, std::move(colorings->second));
  if (auto phi = detail::find_mapping(g, cg, h, ch)) return IsoWitness{std::move(*phi)};
  return std::nullopt;
}

namespace {

// Orbits of the group generated by `gens`, as union-find roots.
class Orbits {
 public:
  explicit Orbits(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  void add(const Permutation& g) {
    for (State v = 0; v < g.size(); ++v) unite(v, g(v));
  }

  State find(State v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

 private:
  void unite(State x, State y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

  std::vector<State> parent_;
};

Permutation transposition(int n, State u, State w) {
  std::vector<State> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::swap(image[u], image[w]);
  return Permutation(std::move(image));
}

AutomorphismGroup stabilizer_chain(const Structure& g, const Coloring& c) {
  const auto cell = detail::target_cell(c);
  if (cell.empty()) return {AutCount(1), {}};
  const State v = cell.front();
  const Coloring cv = detail::individualize(g, c, v);
  AutomorphismGroup group = stabilizer_chain(g, cv);

  Orbits orbits(g.n);
  for (const auto& p : group.generators) orbits.add(p);
  const auto twins = detail::twin_representatives(g, cell);
  for (State w : cell) {
    if (w != v && twins[w] == twins[v]) {
      group.generators.push_back(transposition(g.n, v, w));
      orbits.add(group.generators.back());
    }
  }

  std::vector<State> rejected;
  for (State w : cell) {
    if (orbits.find(w) == orbits.find(v)) continue;
    const State root = orbits.find(w);
    if (std::any_of(rejected.begin(), rejected.end(),
                    [&](State r) { return orbits.find(r) == root; })) {
      continue;
    }
    const Coloring cw = detail::individualize(g, c, w);
    if (auto phi = detail::find_mapping(g, cv, g, cw)) {
      orbits.add(*phi);
      group.generators.push_back(std::move(*phi));
    } else {
      rejected.push_back(w);
    }
  }
  const auto orbit_size =
      std::count_if(cell.begin(), cell.end(), [&](State w) { return orbits.find(w) == orbits.find(v); });
  group.order *= orbit_size;
  return group;
}

}  // namespace

AutomorphismGroup automorphism_group(const Nfa& a) {
  const Structure g(a);
  return stabilizer_chain(g, detail::refine(g, detail::initial_coloring(a)));
}

AutCount count_automorphisms(const Nfa& a) { return automorphism_group(a).order; }

namespace {

// Calls visit(phi) for every permutation phi that maps cells[i] onto
// targets[i] (as sets) for all i. Stops early when visit returns false.
template <typename Visit>
void for_each_block_permutation(int n, const std::vector<std::vector<State>>& cells,
                                const std::vector<std::vector<State>>& targets, Visit&& visit) {
  std::vector<std::vector<State>> current = targets;
  for (auto& t : current) std::sort(t.begin(), t.end());
  std::vector<State> image(static_cast<std::size_t>(n));
  const std::size_t depth = cells.size();
  // Odometer over the per-cell permutations.
  while (true) {
    for (std::size_t i = 0; i < depth; ++i) {
      for (std::size_t j = 0; j < cells[i].size(); ++j) image[cells[i][j]] = current[i][j];
    }
    if (!visit(Permutation(image))) return;
    std::size_t i = 0;
    while (i < depth && !std::next_permutation(current[i].begin(), current[i].end())) ++i;
    if (i == depth) return;
  }
}

std::uint64_t candidate_count(const std::vector<std::vector<State>>& cells, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (const auto& cell : cells) {
    for (std::uint64_t f = 2; f <= cell.size(); ++f) {
      if (total > cap / f) return cap + 1;
      total *= f;
    }
  }
  return total;
}

}  // namespace

AutCount count_automorphisms_enumerate(const Nfa& a, std::uint64_t max_candidates) {
  const Partition p = label_partition(a);
  if (candidate_count(p.cells, max_candidates) > max_candidates) {
    throw std::length_error("too many label-respecting permutations to enumerate");
  }
  AutCount count = 0;
  for_each_block_permutation(a.num_states(), p.cells, p.cells, [&](const Permutation& phi) {
    if (is_automorphism(a, phi)) ++count;
    return true;
  });
  return count;
}

AutCount count_automorphisms_bruteforce(const Nfa& a) {
  const int n = a.num_states();
  if (n > kBruteForceMaxStates) throw std::length_error("brute force is limited to 8 states");
  std::vector<State> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  AutCount count = 0;
  do {
    if (is_automorphism(a, Permutation(image))) ++count;
  } while (std::next_permutation(image.begin(), image.end()));
  return count;
}

namespace {

Nfa canonical_exhaustive(const Nfa& a) {
  const Partition p = label_partition(a);
  std::vector<std::vector<State>> blocks;
  State next = 0;
  for (const auto& cell : p.cells) {
    std::vector<State> block(cell.size());
    std::iota(block.begin(), block.end(), next);
    next += static_cast<State>(cell.size());
    blocks.push_back(std::move(block));
  }
  std::optional<Nfa> best;
  std::string best_key;
  for_each_block_permutation(a.num_states(), p.cells, blocks, [&](const Permutation& phi) {
    Nfa candidate = apply_permutation(a, phi);
    std::string key = candidate.key();
    if (!best || key < best_key) {
      best_key = std::move(key);
      best = std::move(candidate);
    }
    return true;
  });
  return *best;
}

struct PrunedSearch {
  const Nfa& a;
  const Structure& g;
  const std::vector<Permutation>& generators;
  std::vector<State> prefix;
  std::optional<Nfa> best;
  std::string best_key;

  void run(const Coloring& c) {
    const auto cell = detail::target_cell(c);
    if (cell.empty()) {
      Nfa candidate = apply_permutation(a, Permutation(c.color));
      std::string key = candidate.key();
      if (!best || key < best_key) {
        best_key = std::move(key);
        best = std::move(candidate);
      }
      return;
    }
    // Automorphisms fixing the prefix pointwise map subtrees onto subtrees
    // with the same leaves: one branch per orbit suffices.
    Orbits orbits(g.n);
    for (const auto& phi : generators) {
      if (std::all_of(prefix.begin(), prefix.end(), [&](State v) { return phi(v) == v; })) {
        orbits.add(phi);
      }
    }
    std::vector<State> seen;
    for (State w : cell) {
      const State root = orbits.find(w);
      if (std::find(seen.begin(), seen.end(), root) != seen.end()) continue;
      seen.push_back(root);
      prefix.push_back(w);
      run(detail::individualize(g, c, w));
      prefix.pop_back();
    }
  }
};

Nfa canonical_pruned(const Nfa& a) {
  const Structure g(a);
  const Coloring root = detail::refine(g, detail::initial_coloring(a));
  const AutomorphismGroup group = stabilizer_chain(g, root);
  PrunedSearch search{a, g, group.generators, {}, std::nullopt, {}};
  search.run(root);
  return *search.best;
}

}  // namespace

Nfa canonical_automaton(const Nfa& a, CanonicalMode mode) {
  if (mode == CanonicalMode::kAuto) {
    mode = a.num_states() <= kCanonicalGuard ? CanonicalMode::kExhaustive : CanonicalMode::kPruned;
  }
  if (mode == CanonicalMode::kExhaustive) {
    if (a.num_states() > kCanonicalGuard) {
      throw std::length_error("exhaustive canonical form is limited to 8 states");
    }
    return canonical_exhaustive(a);
  }
  return canonical_pruned(a);
}

std::string canonical_form(const Nfa& a, CanonicalMode mode) {
  return canonical_automaton(a, mode).key();
}

}  // namespace nfagen
