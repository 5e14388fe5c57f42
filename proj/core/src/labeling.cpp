#include "nfagen/labeling.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nfagen {

namespace {

// Shortlex order: shorter first, then lexicographic.
bool shortlex_less(const std::string& x, const std::string& y) {
  return x.size() != y.size() ? x.size() < y.size() : x < y;
}

// Minimal words from I to every state. Layer by layer, the word of a newly
// reached state is the minimum of w(p)·x over its predecessors p in the
// previous layer; this yields the shortlex minimum.
std::vector<std::optional<std::string>> words_from_initial(const Nfa& a) {
  const int n = a.num_states();
  const int k = a.num_letters();
  std::vector<std::optional<std::string>> word(static_cast<std::size_t>(n));
  std::vector<State> layer;
  for (State q = 0; q < n; ++q) {
    if (a.is_initial(q)) {
      word[q] = std::string();
      layer.push_back(q);
    }
  }
  while (!layer.empty()) {
    std::map<State, std::string> reached;
    for (State p : layer) {
      for (Letter x = 0; x < k; ++x) {
        const StateSet& succ = a.successors(p, x);
        for (auto q = succ.find_first(); q != StateSet::npos; q = succ.find_next(q)) {
          if (word[q]) continue;
          std::string candidate = *word[p] + a.alphabet().letter_name(x);
          auto [it, inserted] = reached.emplace(static_cast<State>(q), candidate);
          if (!inserted && shortlex_less(candidate, it->second)) it->second = std::move(candidate);
        }
      }
    }
    layer.clear();
    for (auto& [q, w] : reached) {
      word[q] = std::move(w);
      layer.push_back(q);
    }
  }
  return word;
}

// Minimal words from every state to F: with dist(q) the backward BFS depth,
// word(q) = min over x, q' in q·x with dist(q') = dist(q) - 1 of x·word(q').
std::vector<std::optional<std::string>> words_to_final(const Nfa& a) {
  const int n = a.num_states();
  const int k = a.num_letters();
  std::vector<std::optional<std::string>> word(static_cast<std::size_t>(n));
  StateSet done(static_cast<std::size_t>(n));
  for (State q = 0; q < n; ++q) {
    if (a.is_final(q)) {
      word[q] = std::string();
      done.set(q);
    }
  }
  StateSet frontier = done;
  while (frontier.any()) {
    std::vector<std::pair<State, std::string>> reached;
    for (State p = 0; p < n; ++p) {
      if (done.test(p)) continue;
      std::optional<std::string> best;
      for (Letter x = 0; x < k; ++x) {
        const StateSet hits = a.successors(p, x) & frontier;
        for (auto q = hits.find_first(); q != StateSet::npos; q = hits.find_next(q)) {
          std::string candidate = a.alphabet().letter_name(x) + *word[q];
          if (!best || candidate < *best) best = std::move(candidate);
        }
      }
      if (best) reached.emplace_back(p, std::move(*best));
    }
    StateSet next(static_cast<std::size_t>(n));
    for (auto& [p, w] : reached) {
      word[p] = std::move(w);
      next.set(p);
    }
    done |= next;
    frontier = std::move(next);
  }
  return word;
}

}  // namespace

std::string LabelVector::to_string() const {
  std::ostringstream os;
  os << (initial ? "I" : "") << (final_state ? "F" : "") << (initial_and_final ? "+" : "")
     << "|out=";
  for (std::size_t i = 0; i < out_degree.size(); ++i) os << (i ? "," : "") << out_degree[i];
  os << "|in=";
  for (std::size_t i = 0; i < in_degree.size(); ++i) os << (i ? "," : "") << in_degree[i];
  os << "|to=" << (min_word_to_final ? (min_word_to_final->empty() ? "eps" : *min_word_to_final) : "-");
  os << "|from="
     << (min_word_from_initial ? (min_word_from_initial->empty() ? "eps" : *min_word_from_initial)
                               : "-");
  return os.str();
}

std::vector<LabelVector> label_states(const Nfa& a) {
  const int n = a.num_states();
  const int k = a.num_letters();
  std::vector<LabelVector> labels(static_cast<std::size_t>(n));
  for (State q = 0; q < n; ++q) {
    LabelVector& l = labels[q];
    l.initial = a.is_initial(q);
    l.final_state = a.is_final(q);
    l.initial_and_final = l.initial && l.final_state;
    l.out_degree.assign(static_cast<std::size_t>(k), 0);
    l.in_degree.assign(static_cast<std::size_t>(k), 0);
  }
  for (const Transition& t : a.transitions()) {
    ++labels[t.from].out_degree[t.letter];
    ++labels[t.to].in_degree[t.letter];
  }
  auto to_final = words_to_final(a);
  auto from_initial = words_from_initial(a);
  for (State q = 0; q < n; ++q) {
    labels[q].min_word_to_final = std::move(to_final[q]);
    labels[q].min_word_from_initial = std::move(from_initial[q]);
  }
  return labels;
}

LabelVector label_state(const Nfa& a, State q) {
  if (q < 0 || q >= a.num_states()) throw std::out_of_range("state out of range");
  return label_states(a)[q];
}

bool Partition::is_discrete() const {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.size() == 1; });
}

Partition label_partition(const Nfa& a) {
  const auto labels = label_states(a);
  std::map<LabelVector, std::vector<State>> groups;
  for (State q = 0; q < a.num_states(); ++q) groups[labels[q]].push_back(q);
  Partition p;
  for (auto& [label, states] : groups) {
    p.labels.push_back(label);
    p.cells.push_back(std::move(states));
  }
  return p;
}

}  // namespace nfagen
