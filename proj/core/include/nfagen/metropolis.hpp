#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "nfagen/chain.hpp"
#include "nfagen/isomorphism.hpp"
#include "nfagen/nfa.hpp"
#include "nfagen/random.hpp"

namespace nfagen {

// Bounded LRU map from an automaton to |Aut|, safe to share between threads.
// Keyed by the labeled encoding Nfa::key().
class AutCache {
 public:
  explicit AutCache(std::size_t capacity = 1 << 16);

  AutCount get_or_compute(const Nfa& a);

  std::size_t size() const;
  std::uint64_t hits() const;
  std::uint64_t misses() const;

 private:
  using Entry = std::pair<std::string, AutCount>;

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;  // most recent first
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

// min{1, aut_y / aut_x}. Throws std::invalid_argument unless both are >= 1.
double acceptance_probability(const AutCount& aut_x, const AutCount& aut_y);

enum class MetropolisVariant {
  kStandard,  // a rejected proposal holds and uses up the step
  kRetry,     // a rejected proposal is redrawn within the same step
};

struct MetropolisState {
  Nfa current;
  AutCount aut;
  std::uint64_t steps = 0;
  std::uint64_t proposals = 0;  // in-class proposals distinct from the current state
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;

  // Throws std::invalid_argument when `x` is not in `c`.
  static MetropolisState start(Nfa x, const ClassSpec& c, AutCache* cache = nullptr);

  double accept_rate() const {
    return proposals == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

// One step of the chain whose stationary law is proportional to |Aut|, so
// that every isomorphism class is equally likely.
void metropolis_step(MetropolisState& s, const ClassSpec& c, const ChainParams& params, Rng& rng,
                     AutCache* cache = nullptr,
                     MetropolisVariant variant = MetropolisVariant::kStandard);

// `steps` moves of the plain chain from chain_start(c, n, k).
Nfa sample_uniform_labeled(const ClassSpec& c, int n, int k, const ChainParams& params,
                           std::uint64_t steps, Rng& rng);

struct SampleResult {
  Nfa automaton;
  AutCount aut;
  std::uint64_t steps = 0;
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;

  double accept_rate() const {
    return proposals == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

// `steps` Metropolis moves from chain_start(c, n, k).
SampleResult sample_uniform_up_to_iso(const ClassSpec& c, int n, int k, const ChainParams& params,
                                      std::uint64_t steps, Rng& rng, AutCache* cache = nullptr,
                                      MetropolisVariant variant = MetropolisVariant::kStandard);

inline constexpr int kRejectionMaxStates = 6;

struct RejectionResult {
  Nfa automaton;
  AutCount aut;
  std::uint64_t draws = 0;    // uniform draws from the product space
  std::uint64_t rejects = 0;  // in-class draws rejected by the |Aut|/n! test
};

// Exact sampler, uniform over isomorphism classes: draw a uniform member of
// the class (uniform bits, redrawn until in the class) and keep it with
// probability |Aut|/n!. Throws std::length_error for n > 6.
RejectionResult naive_rejection_sample(const ClassSpec& c, int n, int k, Rng& rng);

// The Metropolis matrix over an enumerated class:
// P(x, y) = S(x, y) min{1, |Aut(y)|/|Aut(x)|} for y != x.
KernelMatrix build_metropolis_matrix(std::vector<Nfa> space, const ClassSpec& c,
                                     const ChainParams& params);

}  // namespace nfagen
