#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nfagen/chain.hpp"
#include "nfagen/metropolis.hpp"
#include "nfagen/nfa.hpp"
#include "nfagen/random.hpp"

namespace nfagen {

enum class SamplingMode {
  kWalk,     // one walk per chain; every `steps`-th state is returned
  kRestart,  // every sample is a fresh run of `steps` moves from the start
};

struct SamplerConfig {
  ClassSpec spec = ClassSpec::trim();
  int n = 5;
  int k = 2;
  ChainParams params;
  std::uint64_t steps = 125;
  bool up_to_iso = true;  // Metropolis chain; otherwise the plain chain
  SamplingMode mode = SamplingMode::kWalk;
  MetropolisVariant variant = MetropolisVariant::kStandard;
  // Independent walks in kWalk mode; sample i comes from walk i % chains.
  int chains = 1;

  // Throws std::invalid_argument on an invalid class, size or parameters.
  void validate() const;
};

// Draws samples one after another. The sequence depends on the seed and the
// configuration only.
class ChainSampler {
 public:
  // Walk w draws from make_rng(seed, first_walk + w); a restart sample i
  // from make_rng(seed, i).
  ChainSampler(SamplerConfig config, std::uint64_t seed, AutCache* cache = nullptr,
               int first_walk = 0);

  SampleResult next();
  // Sample i of the restart sequence, independent of any other sample.
  SampleResult restart_sample(std::uint64_t i) const;
  std::uint64_t drawn() const { return drawn_; }
  const SamplerConfig& config() const { return config_; }

 private:
  struct Walk {
    Rng rng;
    MetropolisState state;
  };

  SampleResult advance(Walk& w) const;
  Walk fresh_walk(std::uint64_t stream) const;

  SamplerConfig config_;
  std::uint64_t seed_;
  AutCache* cache_;
  std::vector<Walk> walks_;
  std::uint64_t drawn_ = 0;
};

// Calls visit(i, sample) for every i in [0, count). Each chain (kWalk) or
// sample (kRestart) is one work item; `visit` must be safe to call from
// several workers at once.
void for_each_sample(const SamplerConfig& config, std::uint64_t seed, std::size_t count,
                     const std::function<void(std::size_t, const SampleResult&)>& visit,
                     AutCache* cache = nullptr, int threads = 1);

// `count` samples, spread over `threads` workers by chain (kWalk) or by
// sample (kRestart); identical to a sequential run.
std::vector<SampleResult> draw_samples(const SamplerConfig& config, std::uint64_t seed,
                                       std::size_t count, AutCache* cache = nullptr,
                                       int threads = 1);

}  // namespace nfagen
