#include "nfagen/sampler.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "nfagen/parallel.hpp"

namespace nfagen {

void SamplerConfig::validate() const {
  spec.validate();
  if (n < 1) throw std::invalid_argument("n must be positive");
  Alphabet check(k);
  params.validate(spec);
  if (chains < 1) throw std::invalid_argument("at least one chain is needed");
}

ChainSampler::ChainSampler(SamplerConfig config, std::uint64_t seed, AutCache* cache,
                           int first_walk)
    : config_(std::move(config)), seed_(seed), cache_(cache) {
  config_.validate();
  if (config_.mode == SamplingMode::kWalk) {
    for (int w = 0; w < config_.chains; ++w) {
      walks_.push_back(fresh_walk(static_cast<std::uint64_t>(first_walk + w)));
    }
  }
}

ChainSampler::Walk ChainSampler::fresh_walk(std::uint64_t stream) const {
  const Nfa start = chain_start(config_.spec, config_.n, Alphabet(config_.k));
  if (config_.up_to_iso) {
    return {make_rng(seed_, stream), MetropolisState::start(start, config_.spec, cache_)};
  }
  return {make_rng(seed_, stream), MetropolisState{start, AutCount(1)}};
}

SampleResult ChainSampler::advance(Walk& w) const {
  MetropolisState& s = w.state;
  const MetropolisState before{s.current, 0, s.steps, s.proposals, s.accepted, s.rejected};
  for (std::uint64_t t = 0; t < config_.steps; ++t) {
    if (config_.up_to_iso) {
      metropolis_step(s, config_.spec, config_.params, w.rng, cache_, config_.variant);
    } else {
      s.current = step(s.current, config_.spec, config_.params, w.rng);
      ++s.steps;
    }
  }
  SampleResult r{s.current, config_.up_to_iso ? s.aut : count_automorphisms(s.current)};
  r.steps = s.steps - before.steps;
  r.proposals = s.proposals - before.proposals;
  r.accepted = s.accepted - before.accepted;
  r.rejected = s.rejected - before.rejected;
  return r;
}

SampleResult ChainSampler::restart_sample(std::uint64_t i) const {
  Walk w = fresh_walk(i);
  return advance(w);
}

SampleResult ChainSampler::next() {
  const std::uint64_t i = drawn_++;
  if (config_.mode == SamplingMode::kRestart) return restart_sample(i);
  return advance(walks_[i % walks_.size()]);
}

void for_each_sample(const SamplerConfig& config, std::uint64_t seed, std::size_t count,
                     const std::function<void(std::size_t, const SampleResult&)>& visit,
                     AutCache* cache, int threads) {
  config.validate();
  if (config.mode == SamplingMode::kRestart) {
    const ChainSampler sampler(config, seed, cache);
    parallel_for(
        count, [&](std::size_t i) { visit(i, sampler.restart_sample(i)); }, threads);
    return;
  }
  const std::size_t chains = static_cast<std::size_t>(config.chains);
  parallel_for(
      std::min(chains, count),
      [&](std::size_t w) {
        SamplerConfig one = config;
        one.chains = 1;
        ChainSampler sampler(one, seed, cache, static_cast<int>(w));
        for (std::size_t i = w; i < count; i += chains) visit(i, sampler.next());
      },
      threads);
}

std::vector<SampleResult> draw_samples(const SamplerConfig& config, std::uint64_t seed,
                                       std::size_t count, AutCache* cache, int threads) {
  std::vector<std::optional<SampleResult>> slots(count);
  for_each_sample(
      config, seed, count, [&](std::size_t i, const SampleResult& r) { slots[i] = r; }, cache,
      threads);
  std::vector<SampleResult> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace nfagen
