#include <gtest/gtest.h>

#include <cmath>

#include "nfagen/census.hpp"
#include "nfagen/chain.hpp"
#include "support.hpp"

namespace nfagen {
namespace {

TEST(Toggles, AreInvolutions) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Nfa a = testing::random_nfa(3, 2, rng);
    EXPECT_EQ(toggle_initial(toggle_initial(a, 1), 1), a);
    EXPECT_EQ(toggle_final(toggle_final(a, 2), 2), a);
    EXPECT_EQ(toggle_transition(toggle_transition(a, 0, 1, 2), 0, 1, 2), a);
    EXPECT_NE(toggle_transition(a, 2, 0, 1), a);
  }
}

TEST(ChainParams, Validation) {
  EXPECT_NO_THROW(ChainParams::uniform().validate(ClassSpec::trim()));
  EXPECT_THROW((ChainParams{0.5, 0.5, 0.5, false}).validate(ClassSpec::all()),
               std::invalid_argument);
  EXPECT_THROW((ChainParams{0.0, 0.5, 0.5, false}).validate(ClassSpec::trim()),
               std::invalid_argument);
  EXPECT_NO_THROW(ChainParams::bullet(0.3).validate(ClassSpec::trim(true)));
  EXPECT_THROW(ChainParams::uniform().validate(ClassSpec::trim(true)), std::invalid_argument);
  EXPECT_THROW(ChainParams::bullet(1.0).validate(ClassSpec::trim(true)), std::invalid_argument);
}

TEST(ChainParams, Defaults) {
  EXPECT_TRUE(default_params(ClassSpec::all()).lazy);
  EXPECT_FALSE(default_params(ClassSpec::trim()).lazy);
  const ChainParams b = default_params(ClassSpec::deg_per_letter(2, true));
  EXPECT_EQ(b.rho1, 0.0);
  EXPECT_DOUBLE_EQ(b.rho2, 0.5);
  EXPECT_DOUBLE_EQ(b.rho3, 0.5);
  EXPECT_EQ(default_steps(7), 343U);
}

TEST(Kernel, OffDiagonalProbabilities) {
  const Nfa x = all_initial_final(2, Alphabet(2));
  const ChainParams lazy = ChainParams::uniform(true);
  const ClassSpec all = ClassSpec::all();
  EXPECT_DOUBLE_EQ(kernel_probability(x, toggle_initial(x, 0), all, lazy), 0.5 / 3.0 / 2.0);
  EXPECT_DOUBLE_EQ(kernel_probability(x, toggle_transition(x, 1, 1, 0), all, lazy),
                   0.5 / 3.0 / 8.0);
  const Nfa two = toggle_final(toggle_initial(x, 0), 1);
  EXPECT_EQ(kernel_probability(x, two, all, lazy), 0.0);
  // 4 + 8 neighbours: 0.5 of the mass leaves.
  EXPECT_DOUBLE_EQ(kernel_probability(x, x, all, lazy), 0.5);
}

TEST(Kernel, MatricesOnSmallClasses) {
  for (const ClassSpec& c : {ClassSpec::all(), ClassSpec::trim(), ClassSpec::deg_total(2),
                             ClassSpec::trim(true), ClassSpec::deg_per_letter(2, true)}) {
    const int n = c.family == Family::kAll ? 1 : 2;
    const auto space = enumerate_members(c, n, 2);
    const KernelMatrix m = build_kernel_matrix(space, c, default_params(c));
    EXPECT_LT(m.max_row_sum_error(), 1e-12) << c.name();
    EXPECT_TRUE(m.is_symmetric(1e-15)) << c.name();
    EXPECT_TRUE(m.is_irreducible()) << c.name();
    EXPECT_EQ(m.period(), 1) << c.name();
    for (int i = 0; i < m.size(); i += 7) {
      for (int j = 0; j < m.size(); j += 5) {
        EXPECT_DOUBLE_EQ(m.at(i, j), kernel_probability(m.states[i], m.states[j], c,
                                                        default_params(c)));
      }
    }
  }
}

TEST(Kernel, CsvListsNonzeroEntries) {
  const auto space = enumerate_members(ClassSpec::trim(), 1, 2);
  const KernelMatrix m = build_kernel_matrix(space, ClassSpec::trim(), ChainParams::uniform());
  const std::string csv = m.to_csv();
  EXPECT_EQ(csv.rfind("from,to,probability\n", 0), 0U);
  int lines = 0;
  for (char ch : csv) lines += ch == '\n';
  int nonzero = 0;
  for (double e : m.entries) nonzero += e != 0.0;
  EXPECT_EQ(lines, nonzero + 1);
}

TEST(Step, RejectsMovesLeavingTheClass) {
  // The only member of N(1) with I = F = {0} and no loops: every move but
  // adding a loop leaves the class.
  const Nfa x = all_initial_final(1, Alphabet(2));
  const ClassSpec trim = ClassSpec::trim();
  Rng rng(32);
  for (int t = 0; t < 500; ++t) {
    const Nfa y = step(x, trim, ChainParams::uniform(), rng);
    EXPECT_TRUE(in_class(y, trim));
    EXPECT_TRUE(y.is_initial(0) && y.is_final(0));
  }
  EXPECT_DOUBLE_EQ(kernel_probability(x, x, trim, ChainParams::uniform()), 1.0 - 1.0 / 3.0);
  Nfa outside(1, Alphabet(2));
  EXPECT_THROW(step(outside, trim, ChainParams::uniform(), rng), std::invalid_argument);
}

TEST(Step, StaysInClassAndNeverTogglesBulletInitial) {
  Rng rng(33);
  for (const ClassSpec& c : {ClassSpec::trim(true), ClassSpec::deg_total(2, true),
                             ClassSpec::deg_per_letter(2, true)}) {
    Nfa x = chain_start(c, 4, Alphabet(2));
    for (int t = 0; t < 5000; ++t) {
      x = step(x, c, default_params(c), rng);
      ASSERT_TRUE(in_class(x, c));
      ASSERT_TRUE(x.is_initial(0));
      ASSERT_EQ(x.initial().count(), 1U);
    }
  }
  for (const ClassSpec& c : {ClassSpec::trim(), ClassSpec::deg_total(3)}) {
    Nfa x = chain_start(c, 4, Alphabet(2));
    for (int t = 0; t < 5000; ++t) {
      x = step(x, c, default_params(c), rng);
      ASSERT_TRUE(in_class(x, c));
    }
  }
}

TEST(Step, MarginalsOnAllAutomataAreFair) {
  // Independent restarts of the lazy chain on A(2) past its mixing budget:
  // every component is present with probability 1/2.
  const int n = 2, k = 2, runs = 10000;
  const ChainParams params = ChainParams::uniform(true);
  const auto budget = mixing_budget(n, k, params, 0.01).steps;
  Rng rng(34);
  std::vector<int> counts(2 * n + k * n * n, 0);
  for (int r = 0; r < runs; ++r) {
    Nfa x = all_initial_final(n, Alphabet(k));
    for (std::uint64_t t = 0; t < budget; ++t) x = step(x, ClassSpec::all(), params, rng);
    int slot = 0;
    for (State q = 0; q < n; ++q) counts[slot++] += x.is_initial(q);
    for (State q = 0; q < n; ++q) counts[slot++] += x.is_final(q);
    for (State p = 0; p < n; ++p) {
      for (Letter a = 0; a < k; ++a) {
        for (State q = 0; q < n; ++q) counts[slot++] += x.has_transition(p, a, q);
      }
    }
  }
  const double sd = std::sqrt(runs * 0.25);
  for (int c : counts) EXPECT_LT(std::abs(c - runs / 2.0), 3.0 * sd + 0.01 * runs);
}

TEST(Step, ProposalFrequencies) {
  Rng rng(35);
  const ChainParams p{0.2, 0.3, 0.4, true};
  const int draws = 200000;
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < draws; ++i) ++counts[static_cast<int>(propose_move(3, 2, p, rng).kind)];
  const double expected[4] = {0.5 + 0.5 * 0.1, 0.1, 0.15, 0.2};
  for (int i = 0; i < 4; ++i) {
    const double sd = std::sqrt(draws * expected[i] * (1 - expected[i]));
    EXPECT_LT(std::abs(counts[i] - draws * expected[i]), 3.0 * sd);
  }
}

TEST(MixingBudget, HandComputedValues) {
  // n = 2, k = 2, rho = 1/3, eps = 1/4: the transition cube (d = 8)
  // dominates with ceil(24 (ln 8 + ln 12)) = 110.
  EXPECT_EQ(mixing_budget(2, 2, ChainParams::uniform(true), 0.25).steps, 110U);
  // n = 1, k = 2, eps = 1: ceil(6 (ln 2 + ln 3)) = 11.
  EXPECT_EQ(mixing_budget(1, 2, ChainParams::uniform(true), 1.0).steps, 11U);
}

TEST(MixingBudget, MonotoneAndValidated) {
  const ChainParams p = ChainParams::uniform(true);
  for (int n = 1; n < 12; ++n) {
    EXPECT_LE(mixing_budget(n, 2, p, 0.1).steps, mixing_budget(n + 1, 2, p, 0.1).steps);
    EXPECT_LE(mixing_budget(n, 2, p, 0.2).steps, mixing_budget(n, 2, p, 0.1).steps);
    EXPECT_LE(mixing_budget(n, 2, p, 0.1).steps, mixing_budget(n, 3, p, 0.1).steps);
  }
  EXPECT_THROW(mixing_budget(3, 2, p, 0.0), std::invalid_argument);
  EXPECT_THROW(mixing_budget(3, 2, p, 1.5), std::invalid_argument);
  EXPECT_THROW(mixing_budget(3, 2, ChainParams::bullet(0.5), 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace nfagen
