#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>

#include "nfagen/parallel.hpp"
#include "nfagen/sampler.hpp"
#include "support.hpp"

namespace nfagen {
namespace {

SamplerConfig config_for(const ClassSpec& c, int n, SamplingMode mode, bool up_to_iso) {
  SamplerConfig cfg;
  cfg.spec = c;
  cfg.n = n;
  cfg.params = default_params(c);
  cfg.steps = default_steps(n);
  cfg.mode = mode;
  cfg.up_to_iso = up_to_iso;
  return cfg;
}

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](std::size_t i) { ++hits[i]; }, 4);
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); }, 4);
}

TEST(Parallel, RethrowsTheFirstError) {
  EXPECT_THROW(parallel_for(
                   100,
                   [](std::size_t i) {
                     if (i == 37) throw std::runtime_error("boom");
                   },
                   3),
               std::runtime_error);
}

TEST(Parallel, ThreadCountFromEnvironment) {
  ::setenv("NFAGEN_THREADS", "3", 1);
  EXPECT_EQ(default_threads(), 3);
  ::setenv("NFAGEN_THREADS", "zero", 1);
  EXPECT_GE(default_threads(), 1);
  ::unsetenv("NFAGEN_THREADS");
  EXPECT_GE(default_threads(), 1);
}

TEST(Sampler, SameSeedSameSequence) {
  for (SamplingMode mode : {SamplingMode::kWalk, SamplingMode::kRestart}) {
    for (bool iso : {false, true}) {
      const SamplerConfig cfg = config_for(ClassSpec::trim(), 4, mode, iso);
      ChainSampler a(cfg, 7), b(cfg, 7), c(cfg, 8);
      bool differs = false;
      for (int i = 0; i < 30; ++i) {
        const SampleResult x = a.next(), y = b.next(), z = c.next();
        ASSERT_EQ(x.automaton, y.automaton);
        ASSERT_EQ(x.aut, y.aut);
        differs |= !(x.automaton == z.automaton);
        ASSERT_TRUE(in_class(x.automaton, cfg.spec));
        ASSERT_EQ(x.aut, count_automorphisms(x.automaton));
        ASSERT_EQ(x.steps, cfg.steps);
      }
      EXPECT_TRUE(differs);
      EXPECT_EQ(a.drawn(), 30U);
    }
  }
}

TEST(Sampler, RestartSamplesAreIndependentOfOrder) {
  const SamplerConfig cfg = config_for(ClassSpec::deg_total(2), 5, SamplingMode::kRestart, true);
  ChainSampler s(cfg, 11);
  std::vector<Nfa> seq;
  for (int i = 0; i < 10; ++i) seq.push_back(s.next().automaton);
  for (int i = 9; i >= 0; --i) EXPECT_EQ(s.restart_sample(i).automaton, seq[i]);
}

TEST(Sampler, ParallelDrawEqualsSequentialRun) {
  for (SamplingMode mode : {SamplingMode::kWalk, SamplingMode::kRestart}) {
    SamplerConfig cfg = config_for(ClassSpec::trim(true), 5, mode, true);
    cfg.chains = 3;
    AutCache cache;
    const auto seq = draw_samples(cfg, 21, 40, &cache, 1);
    const auto par = draw_samples(cfg, 21, 40, &cache, 4);
    ChainSampler s(cfg, 21);
    ASSERT_EQ(seq.size(), 40U);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      EXPECT_EQ(seq[i].automaton, par[i].automaton);
      EXPECT_EQ(seq[i].automaton, s.next().automaton);
    }
  }
}

TEST(Sampler, RejectsInvalidConfigs) {
  SamplerConfig cfg = config_for(ClassSpec::trim(), 4, SamplingMode::kWalk, true);
  cfg.chains = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = config_for(ClassSpec::trim(true), 4, SamplingMode::kWalk, true);
  cfg.params = ChainParams::uniform();
  EXPECT_THROW(ChainSampler(cfg, 1), std::invalid_argument);
  cfg = config_for(ClassSpec::trim(), 4, SamplingMode::kWalk, true);
  cfg.k = 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace nfagen
