#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "nfagen/census.hpp"
#include "nfagen/metropolis.hpp"
#include "support.hpp"

namespace nfagen {
namespace {

TEST(Enumeration, SmallClassSizes) {
  EXPECT_EQ(enumerate_members(ClassSpec::all(), 1, 2).size(), 16U);
  EXPECT_EQ(enumerate_members(ClassSpec::trim(), 1, 2).size(), 4U);
  EXPECT_EQ(enumerate_members(ClassSpec::all(), 2, 2).size(), 4096U);
  // Frozen regression constants of this enumeration.
  EXPECT_EQ(enumerate_members(ClassSpec::trim(), 2, 2).size(), 1696U);
  EXPECT_EQ(enumerate_members(ClassSpec::deg_total(2), 2, 2).size(), 681U);
  EXPECT_EQ(enumerate_members(ClassSpec::deg_total(2, true), 2, 2).size(), 203U);
  EXPECT_THROW(enumerate_members(ClassSpec::all(), 3, 3), std::length_error);
}

TEST(Enumeration, MembersAreDistinctAndInClass) {
  const ClassSpec c = ClassSpec::deg_per_letter(2, true);
  const auto members = enumerate_members(c, 2, 2);
  std::set<std::string> keys;
  for (const Nfa& a : members) {
    EXPECT_TRUE(in_class(a, c));
    EXPECT_TRUE(keys.insert(a.key()).second);
  }
  // Oracle: filter the full product space.
  std::size_t expected = 0;
  for (const Nfa& a : enumerate_members(ClassSpec::all(), 2, 2)) expected += in_class(a, c);
  EXPECT_EQ(members.size(), expected);
}

TEST(Census, OneStateClassesAreSingletons) {
  const CensusReport r = census(ClassSpec::all(), 1, 2);
  EXPECT_EQ(r.total, 16U);
  EXPECT_EQ(r.gamma(), 16U);
}

TEST(Census, ClassSizesAndGamma) {
  const CensusReport r = census(ClassSpec::trim(), 2, 2);
  EXPECT_EQ(r.total, 1696U);
  EXPECT_EQ(r.gamma(), 856U);
  std::uint64_t sum = 0;
  for (const auto& cls : r.classes) {
    sum += cls.labeled_count;
    EXPECT_EQ(AutCount(cls.labeled_count) * cls.aut, 2);
    EXPECT_EQ(canonical_form(cls.representative), cls.canonical);
  }
  EXPECT_EQ(sum, r.total);
  EXPECT_TRUE(std::is_sorted(r.classes.begin(), r.classes.end(),
                             [](const auto& x, const auto& y) { return x.canonical < y.canonical; }));
  EXPECT_THROW(r.index_of("missing"), std::out_of_range);
}

TEST(Census, BulletClassesCountRelabelingsFixingTheInitialState) {
  const CensusReport r = census(ClassSpec::trim(true), 3, 2);
  for (const auto& cls : r.classes) EXPECT_EQ(AutCount(cls.labeled_count) * cls.aut, 2);
}

TEST(Census, GammaIsMonotoneUnderInclusion) {
  const auto g2 = census(ClassSpec::deg_total(2), 2, 2).gamma();
  const auto gp = census(ClassSpec::deg_per_letter(2), 2, 2).gamma();
  const auto gn = census(ClassSpec::trim(), 2, 2).gamma();
  EXPECT_LE(g2, gp);
  EXPECT_LE(gp, gn);
  EXPECT_LT(g2, gn);
}

TEST(Census, LabeledAndClassUniformLawsDiffer) {
  const CensusReport r = census(ClassSpec::trim(), 2, 2);
  const double margin = tv_distance(labeled_uniform_law(r), class_uniform_law(r));
  EXPECT_GT(margin, 0.0);
  // 16 classes with |Aut| = 2 among 856: (1/2) sum |p - 1/856|.
  const double expected =
      0.5 * (840 * std::abs(2.0 / 1696 - 1.0 / 856) + 16 * std::abs(1.0 / 1696 - 1.0 / 856));
  EXPECT_NEAR(margin, expected, 1e-12);
  labeled_uniform_law(r).validate();
  const std::string json = r.to_json();
  EXPECT_NE(json.find("\"gamma\":856"), std::string::npos);
}

TEST(Distribution, TotalVariationExamples) {
  const Distribution u{{"a", "b", "c", "d"}, {0.25, 0.25, 0.25, 0.25}};
  const Distribution v{{"a", "b", "c", "d"}, {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}};
  EXPECT_NEAR(tv_distance(u, v), 0.25, 1e-15);
  EXPECT_EQ(tv_distance(u, u), 0.0);
  EXPECT_NEAR(tv_distance(v, u), tv_distance(u, v), 1e-15);
  const Distribution x{{"a", "b"}, {1.0, 0.0}};
  const Distribution y{{"a", "b"}, {0.0, 1.0}};
  EXPECT_EQ(tv_distance(x, y), 1.0);
  EXPECT_THROW(tv_distance(u, x), std::invalid_argument);
  EXPECT_THROW((Distribution{{"a"}, {0.5}}).validate(), std::invalid_argument);
  EXPECT_EQ(x.to_csv().rfind("class,probability\n", 0), 0U);
}

TEST(Distribution, EmpiricalPointMass) {
  const CensusReport r = census(ClassSpec::trim(), 1, 2);
  const Nfa a = chain_start(ClassSpec::trim(), 1, Alphabet(2));
  const Distribution d = empirical_class_distribution({a, a, a}, r);
  EXPECT_EQ(d.probability[r.index_of(canonical_form(a))], 1.0);
  EXPECT_THROW(empirical_class_distribution({Nfa(1, Alphabet(2))}, r), std::out_of_range);
}

TEST(Stationary, FixedPointOfPlainAndMetropolisKernels) {
  const ClassSpec c = ClassSpec::deg_total(2);
  const auto space = enumerate_members(c, 2, 2);
  for (bool mh : {false, true}) {
    const KernelMatrix m = mh ? build_metropolis_matrix(space, c, ChainParams::uniform())
                              : build_kernel_matrix(space, c, ChainParams::uniform());
    const auto pi = exact_stationary(m);
    double worst = 0.0;
    for (int j = 0; j < m.size(); ++j) {
      double s = 0.0;
      for (int i = 0; i < m.size(); ++i) s += pi[i] * m.at(i, j);
      worst = std::max(worst, std::abs(s - pi[j]));
    }
    EXPECT_LT(worst, 1e-10);
    if (!mh) {
      for (double p : pi) EXPECT_NEAR(p, 1.0 / m.size(), 1e-8);
    }
  }
}

TEST(Stationary, PointMassAndReducibleMatrices) {
  KernelMatrix one{{Nfa(1, Alphabet(2))}, {1.0}};
  EXPECT_EQ(exact_stationary(one), std::vector<double>{1.0});
  KernelMatrix split{{Nfa(1, Alphabet(2)), Nfa(1, Alphabet(3))}, {1.0, 0.0, 0.0, 1.0}};
  EXPECT_THROW(exact_stationary(split), std::invalid_argument);
}

TEST(Stationary, ClassLawOfTheLabeledUniformLaw) {
  const CensusReport r = census(ClassSpec::trim(), 2, 2);
  const KernelMatrix m =
      build_kernel_matrix(enumerate_members(ClassSpec::trim(), 2, 2), ClassSpec::trim(),
                          ChainParams::uniform());
  const std::vector<double> uniform(m.size(), 1.0 / m.size());
  EXPECT_LT(tv_distance(class_law(m, uniform, r), labeled_uniform_law(r)), 1e-12);
}

}  // namespace
}  // namespace nfagen
