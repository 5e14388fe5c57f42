#include "nfagen/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace nfagen {

Dfa::Dfa(int num_states, Alphabet alphabet)
    : alphabet_(alphabet),
      final_(static_cast<std::size_t>(num_states), false),
      delta_(static_cast<std::size_t>(num_states) * alphabet.size(), kNoState) {
  if (num_states < 1) throw std::invalid_argument("a DFA needs at least one state");
}

bool Dfa::is_complete() const {
  return std::none_of(delta_.begin(), delta_.end(), [](State s) { return s == kNoState; });
}

bool Dfa::accepts(std::span<const Letter> word) const {
  State q = initial();
  for (Letter a : word) {
    q = next(q, a);
    if (q == kNoState) return false;
  }
  return is_final(q);
}

Dfa determinize(const Nfa& a) {
  const int k = a.num_letters();
  std::map<StateSet, State> index;
  std::vector<StateSet> subsets;
  std::vector<std::vector<State>> rows;

  auto intern = [&](const StateSet& s) {
    auto [it, inserted] = index.emplace(s, static_cast<State>(subsets.size()));
    if (inserted) subsets.push_back(s);
    return it->second;
  };

  intern(a.initial());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<State> row(static_cast<std::size_t>(k), Dfa::kNoState);
    for (Letter x = 0; x < k; ++x) {
      StateSet target(static_cast<std::size_t>(a.num_states()));
      const StateSet& s = subsets[i];
      for (auto p = s.find_first(); p != StateSet::npos; p = s.find_next(p)) {
        target |= a.successors(static_cast<State>(p), x);
      }
      if (target.any()) row[x] = intern(target);
    }
    rows.push_back(std::move(row));
  }

  Dfa d(static_cast<int>(subsets.size()), a.alphabet());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const State q = static_cast<State>(i);
    d.set_final(q, subsets[i].intersects(a.final_states()));
    for (Letter x = 0; x < k; ++x) d.set_next(q, x, rows[i][x]);
  }
  return d;
}

MinimizationResult minimize(const Dfa& d) {
  const int k = d.alphabet().size();

  // Accessible part, completed with a sink when some transition is missing.
  std::vector<State> order;
  std::vector<State> renumber(static_cast<std::size_t>(d.num_states()), Dfa::kNoState);
  std::deque<State> queue{d.initial()};
  renumber[d.initial()] = 0;
  order.push_back(d.initial());
  bool partial = false;
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < k; ++x) {
      const State t = d.next(q, x);
      if (t == Dfa::kNoState) {
        partial = true;
      } else if (renumber[t] == Dfa::kNoState) {
        renumber[t] = static_cast<State>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  const int m = static_cast<int>(order.size()) + (partial ? 1 : 0);
  const State sink = partial ? m - 1 : Dfa::kNoState;
  std::vector<State> next(static_cast<std::size_t>(m) * k);
  std::vector<bool> fin(static_cast<std::size_t>(m), false);
  for (State i = 0; i < static_cast<State>(order.size()); ++i) {
    fin[i] = d.is_final(order[i]);
    for (Letter x = 0; x < k; ++x) {
      const State t = d.next(order[i], x);
      next[i * k + x] = (t == Dfa::kNoState) ? sink : renumber[t];
    }
  }
  if (partial) {
    for (Letter x = 0; x < k; ++x) next[sink * k + x] = sink;
  }

  // Moore refinement: the class of q is the rank of (class, successor classes).
  std::vector<int> cls(static_cast<std::size_t>(m));
  for (State q = 0; q < m; ++q) cls[q] = fin[q] ? 1 : 0;
  int num_classes = 0;
  while (true) {
    std::map<std::vector<int>, int> ranks;
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(m));
    for (State q = 0; q < m; ++q) {
      sig[q].reserve(k + 1);
      sig[q].push_back(cls[q]);
      for (Letter x = 0; x < k; ++x) sig[q].push_back(cls[next[q * k + x]]);
      ranks.emplace(sig[q], 0);
    }
    int r = 0;
    for (auto& [_, v] : ranks) v = r++;
    for (State q = 0; q < m; ++q) cls[q] = ranks[sig[q]];
    if (r == num_classes) break;
    num_classes = r;
  }

  // Number the classes in BFS order from the initial class.
  std::vector<State> class_id(static_cast<std::size_t>(num_classes), Dfa::kNoState);
  std::vector<State> rep;
  class_id[cls[0]] = 0;
  rep.push_back(0);
  for (std::size_t i = 0; i < rep.size(); ++i) {
    for (Letter x = 0; x < k; ++x) {
      const int c = cls[next[rep[i] * k + x]];
      if (class_id[c] == Dfa::kNoState) {
        class_id[c] = static_cast<State>(rep.size());
        rep.push_back(next[rep[i] * k + x]);
      }
    }
  }
  Dfa out(static_cast<int>(rep.size()), d.alphabet());
  for (State i = 0; i < static_cast<State>(rep.size()); ++i) {
    out.set_final(i, fin[rep[i]]);
    for (Letter x = 0; x < k; ++x) out.set_next(i, x, class_id[cls[next[rep[i] * k + x]]]);
  }

  // A minimal complete DFA has at most one dead state.
  const int size = out.num_states();
  std::vector<bool> live(static_cast<std::size_t>(size), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < size; ++q) {
      if (live[q]) continue;
      bool l = out.is_final(q);
      for (Letter x = 0; x < k && !l; ++x) l = live[out.next(q, x)];
      if (l) live[q] = changed = true;
    }
  }
  const int dead = static_cast<int>(std::count(live.begin(), live.end(), false));
  return MinimizationResult{std::move(out), size, size - dead, partial};
}

bool nfa_accepts(const Nfa& a, std::span<const Letter> word) {
  StateSet current = a.initial();
  for (Letter x : word) {
    StateSet next(static_cast<std::size_t>(a.num_states()));
    for (auto p = current.find_first(); p != StateSet::npos; p = current.find_next(p)) {
      next |= a.successors(static_cast<State>(p), x);
    }
    current = std::move(next);
  }
  return current.intersects(a.final_states());
}

}  // namespace nfagen
