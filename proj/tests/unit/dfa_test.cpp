#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "nfagen/dfa.hpp"
#include "support.hpp"

namespace nfagen {
namespace {

using Word = std::vector<Letter>;

// Direct subset simulation, independent of determinize().
bool oracle_accepts(const Nfa& a, const Word& w) {
  const int n = a.num_states();
  std::vector<bool> cur(static_cast<std::size_t>(n));
  for (State q = 0; q < n; ++q) cur[q] = a.is_initial(q);
  for (Letter x : w) {
    std::vector<bool> next(static_cast<std::size_t>(n), false);
    for (State p = 0; p < n; ++p) {
      if (!cur[p]) continue;
      for (State q = 0; q < n; ++q) {
        if (a.has_transition(p, x, q)) next[q] = true;
      }
    }
    cur = std::move(next);
  }
  for (State q = 0; q < n; ++q) {
    if (cur[q] && a.is_final(q)) return true;
  }
  return false;
}

std::vector<Word> words_up_to(int k, int length) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == length) continue;
    for (Letter x = 0; x < k; ++x) {
      Word w = out[i];
      w.push_back(x);
      out.push_back(std::move(w));
    }
  }
  return out;
}

// Number of distinct residual languages u^-1 L, each identified by its
// restriction to words of length <= 7 (enough for automata with 3 states).
int oracle_minimal_size(const Nfa& a, bool drop_empty) {
  const auto prefixes = words_up_to(a.num_letters(), 8);
  const auto suffixes = words_up_to(a.num_letters(), 7);
  std::set<std::vector<bool>> residuals;
  for (const Word& u : prefixes) {
    std::vector<bool> r;
    r.reserve(suffixes.size());
    for (const Word& v : suffixes) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      r.push_back(oracle_accepts(a, uv));
    }
    residuals.insert(std::move(r));
  }
  if (drop_empty) residuals.erase(std::vector<bool>(suffixes.size(), false));
  return static_cast<int>(residuals.size());
}

TEST(Dfa, AcceptsAndPartialTransitions) {
  Dfa d(2, Alphabet(2));
  d.set_next(0, 0, 1);
  d.set_final(1);
  const Word a{0}, ab{0, 1}, empty{};
  EXPECT_TRUE(d.accepts(a));
  EXPECT_FALSE(d.accepts(ab));
  EXPECT_FALSE(d.accepts(empty));
  EXPECT_FALSE(d.is_complete());
}

TEST(Dfa, DeterminizeFigureAutomaton) {
  const Nfa a = testing::figure_two_left();
  const Dfa d = determinize(a);
  for (const Word& w : words_up_to(2, 8)) EXPECT_EQ(d.accepts(w), oracle_accepts(a, w));
}

TEST(Dfa, EmptyInitialSetGivesOneState) {
  Nfa a(3, Alphabet(2));
  a.set_final(0);
  const auto m = minimize(determinize(a));
  EXPECT_EQ(m.complete_size, 1);
  EXPECT_EQ(m.trim_size, 0);
}

TEST(Dfa, UniversalLanguageHasOneState) {
  Nfa a(1, Alphabet(2));
  a.set_initial(0);
  a.set_final(0);
  a.add_transition(0, 0, 0);
  a.add_transition(0, 1, 0);
  const auto m = minimize(determinize(a));
  EXPECT_EQ(m.complete_size, 1);
  EXPECT_EQ(m.trim_size, 1);
  EXPECT_FALSE(m.sink_added);
}

TEST(Dfa, MinimalSizeMatchesResidualCount) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const Nfa a = testing::random_nfa(n, 2, rng, 0.35, 0.5, 0.4);
    const auto m = minimize(determinize(a));
    EXPECT_EQ(m.complete_size, oracle_minimal_size(a, false)) << trial;
    EXPECT_EQ(m.trim_size, oracle_minimal_size(a, true)) << trial;
    EXPECT_TRUE(m.dfa.is_complete());
    for (const Word& w : words_up_to(2, 6)) {
      ASSERT_EQ(m.dfa.accepts(w), oracle_accepts(a, w));
      ASSERT_EQ(nfa_accepts(a, w), oracle_accepts(a, w));
    }
  }
}

TEST(Dfa, MinimizeIsIdempotent) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Nfa a = testing::random_nfa(4, 2, rng);
    const auto once = minimize(determinize(a));
    const auto twice = minimize(once.dfa);
    EXPECT_EQ(once.complete_size, twice.complete_size);
    EXPECT_EQ(once.trim_size, twice.trim_size);
  }
}

}  // namespace
}  // namespace nfagen
