#include "refinement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nfagen/labeling.hpp"

namespace nfagen::detail {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Dense ranks of `keys` under operator<, with a hash of the sorted multiset.
template <typename Key>
Coloring rank_keys(const std::vector<Key>& keys, std::uint64_t seed,
                   std::uint64_t (*hash_key)(const Key&)) {
  const std::size_t n = keys.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return keys[x] < keys[y]; });
  Coloring c;
  c.color.assign(n, 0);
  std::uint64_t h = seed;
  int rank = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || keys[order[i - 1]] < keys[order[i]]) {
      ++rank;
      h = mix(h, hash_key(keys[order[i]]));
    }
    h = mix(h, static_cast<std::uint64_t>(rank));
    c.color[order[i]] = rank;
  }
  c.num_colors = rank + 1;
  c.certificate = h;
  return c;
}

std::uint64_t hash_int(const int& v) { return static_cast<std::uint64_t>(v); }

std::uint64_t hash_vector(const std::vector<int>& v) {
  std::uint64_t h = v.size();
  for (int x : v) h = mix(h, static_cast<std::uint64_t>(x));
  return h;
}

}  // namespace

Structure::Structure(const Nfa& a) : nfa(&a), n(a.num_states()) {
  out.resize(static_cast<std::size_t>(n));
  in.resize(static_cast<std::size_t>(n));
  for (const Transition& t : a.transitions()) {
    out[t.from].emplace_back(t.letter, t.to);
    in[t.to].emplace_back(t.letter, t.from);
  }
}

Coloring coloring_from_ranks(const std::vector<int>& keys) {
  return rank_keys<int>(keys, 0x5EEDULL, &hash_int);
}

Coloring initial_coloring(const Nfa& a) {
  const auto labels = label_states(a);
  std::vector<LabelVector> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> keys(labels.size());
  for (std::size_t q = 0; q < labels.size(); ++q) {
    keys[q] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), labels[q]) -
                               sorted.begin());
  }
  return coloring_from_ranks(keys);
}

std::optional<std::pair<Coloring, Coloring>> initial_colorings(const Nfa& a, const Nfa& b) {
  if (a.num_states() != b.num_states() || !(a.alphabet() == b.alphabet())) return std::nullopt;
  const auto la = label_states(a);
  const auto lb = label_states(b);
  auto sa = la;
  auto sb = lb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  auto ranks = [&](const std::vector<LabelVector>& labels) {
    std::vector<int> keys(labels.size());
    for (std::size_t q = 0; q < labels.size(); ++q) {
      keys[q] =
          static_cast<int>(std::lower_bound(sa.begin(), sa.end(), labels[q]) - sa.begin());
    }
    return coloring_from_ranks(keys);
  };
  return std::make_pair(ranks(la), ranks(lb));
}

Coloring refine(const Structure& g, Coloring c) {
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(g.n));
  std::vector<std::pair<int, int>> buf;
  while (true) {
    for (State v = 0; v < g.n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(c.color[v]);
      for (const auto* adj : {&g.out[v], &g.in[v]}) {
        buf.clear();
        for (const auto& [x, w] : *adj) buf.emplace_back(x, c.color[w]);
        std::sort(buf.begin(), buf.end());
        s.push_back(static_cast<int>(buf.size()));
        for (const auto& [x, col] : buf) {
          s.push_back(x);
          s.push_back(col);
        }
      }
    }
    Coloring next = rank_keys<std::vector<int>>(sig, c.certificate, &hash_vector);
    const bool stable = next.num_colors == c.num_colors;
    c = std::move(next);
    if (stable) return c;
  }
}

Coloring individualize(const Structure& g, const Coloring& c, State v) {
  std::vector<int> keys(c.color.size());
  for (std::size_t u = 0; u < keys.size(); ++u) {
    const bool sibling = c.color[u] == c.color[v] && static_cast<State>(u) != v;
    keys[u] = 2 * c.color[u] + (sibling ? 1 : 0);
  }
  Coloring split = coloring_from_ranks(keys);
  split.certificate = mix(c.certificate, mix(static_cast<std::uint64_t>(c.color[v]), 0x1D1ULL));
  return refine(g, std::move(split));
}

std::vector<State> target_cell(const Coloring& c) {
  std::vector<int> size(static_cast<std::size_t>(c.num_colors), 0);
  for (int col : c.color) ++size[col];
  int best = -1;
  for (int col = 0; col < c.num_colors; ++col) {
    if (size[col] >= 2 && (best < 0 || size[col] < size[best])) best = col;
  }
  std::vector<State> cell;
  if (best < 0) return cell;
  for (std::size_t v = 0; v < c.color.size(); ++v) {
    if (c.color[v] == best) cell.push_back(static_cast<State>(v));
  }
  return cell;
}

namespace {

bool transposition_is_automorphism(const Nfa& a, const Structure& g, State u, State w) {
  if (a.is_initial(u) != a.is_initial(w) || a.is_final(u) != a.is_final(w)) return false;
  if (g.out[u].size() != g.out[w].size() || g.in[u].size() != g.in[w].size()) return false;
  auto tau = [&](State x) { return x == u ? w : (x == w ? u : x); };
  for (const auto& [x, y] : g.out[u]) {
    if (!a.has_transition(w, x, tau(y))) return false;
  }
  for (const auto& [x, y] : g.out[w]) {
    if (!a.has_transition(u, x, tau(y))) return false;
  }
  for (const auto& [x, p] : g.in[u]) {
    if (p != u && p != w && !a.has_transition(p, x, w)) return false;
  }
  for (const auto& [x, p] : g.in[w]) {
    if (p != u && p != w && !a.has_transition(p, x, u)) return false;
  }
  return true;
}

}  // namespace

std::vector<State> twin_representatives(const Structure& g, const std::vector<State>& candidates) {
  const Nfa& a = *g.nfa;
  std::vector<State> rep(static_cast<std::size_t>(a.num_states()));
  std::iota(rep.begin(), rep.end(), 0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const State w = candidates[i];
    for (std::size_t j = 0; j < i; ++j) {
      const State u = candidates[j];
      if (rep[u] == u && transposition_is_automorphism(a, g, u, w)) {
        rep[w] = u;
        break;
      }
    }
  }
  return rep;
}

namespace {

std::optional<Permutation> search(const Structure& g, const Coloring& cg, const Structure& h,
                                  const Coloring& ch) {
  if (cg.certificate != ch.certificate || cg.num_colors != ch.num_colors) return std::nullopt;
  if (cg.is_discrete()) {
    std::vector<State> by_color(static_cast<std::size_t>(h.n));
    for (State w = 0; w < h.n; ++w) by_color[ch.color[w]] = w;
    std::vector<State> image(static_cast<std::size_t>(g.n));
    for (State v = 0; v < g.n; ++v) image[v] = by_color[cg.color[v]];
    Permutation phi(std::move(image));
    if (apply_permutation(*g.nfa, phi) == *h.nfa) return phi;
    return std::nullopt;
  }
  const auto cell = target_cell(cg);
  const int col = cg.color[cell.front()];
  std::vector<State> candidates;
  for (State w = 0; w < h.n; ++w) {
    if (ch.color[w] == col) candidates.push_back(w);
  }
  if (candidates.size() != cell.size()) return std::nullopt;
  const Coloring next_g = individualize(g, cg, cell.front());
  const auto twins = twin_representatives(h, candidates);
  for (State w : candidates) {
    if (twins[w] != w) continue;
    const Coloring next_h = individualize(h, ch, w);
    if (auto phi = search(g, next_g, h, next_h)) return phi;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Permutation> find_mapping(const Structure& g, const Coloring& cg, const Structure& h,
                                        const Coloring& ch) {
  if (g.n != h.n) return std::nullopt;
  return search(g, cg, h, ch);
}

}  // namespace nfagen::detail
