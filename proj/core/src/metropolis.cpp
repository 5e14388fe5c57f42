#include "nfagen/metropolis.hpp"

#include <stdexcept>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace nfagen {

AutCache::AutCache(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

AutCount AutCache::get_or_compute(const Nfa& a) {
  std::string key = a.key();
  {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      ++hits_;
      return it->second->second;
    }
    ++misses_;
  }
  AutCount value = count_automorphisms(a);
  std::lock_guard lock(mutex_);
  if (index_.find(key) == index_.end()) {
    order_.emplace_front(key, value);
    index_.emplace(std::move(key), order_.begin());
    if (order_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }
  return value;
}

std::size_t AutCache::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

std::uint64_t AutCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::uint64_t AutCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

double acceptance_probability(const AutCount& aut_x, const AutCount& aut_y) {
  if (aut_x < 1 || aut_y < 1) throw std::invalid_argument("automorphism counts must be >= 1");
  if (aut_y >= aut_x) return 1.0;
  return boost::multiprecision::cpp_rational(aut_y, aut_x).convert_to<double>();
}

namespace {

AutCount aut_of(const Nfa& a, AutCache* cache) {
  return cache ? cache->get_or_compute(a) : count_automorphisms(a);
}

}  // namespace

MetropolisState MetropolisState::start(Nfa x, const ClassSpec& c, AutCache* cache) {
  if (!in_class(x, c)) throw std::invalid_argument("start state is outside its class");
  AutCount aut = aut_of(x, cache);
  return {std::move(x), std::move(aut)};
}

void metropolis_step(MetropolisState& s, const ClassSpec& c, const ChainParams& params, Rng& rng,
                     AutCache* cache, MetropolisVariant variant) {
  ++s.steps;
  const int n = s.current.num_states();
  const int k = s.current.num_letters();
  while (true) {
    const Move m = propose_move(n, k, params, rng);
    if (m.kind == Move::Kind::kHold) return;
    Nfa y = apply_move(s.current, m);
    if (!in_class(y, c)) return;
    ++s.proposals;
    AutCount aut_y = aut_of(y, cache);
    const double alpha = acceptance_probability(s.aut, aut_y);
    if (alpha >= 1.0 || uniform01(rng) < alpha) {
      ++s.accepted;
      s.current = std::move(y);
      s.aut = std::move(aut_y);
      return;
    }
    ++s.rejected;
    if (variant == MetropolisVariant::kStandard) return;
  }
}

Nfa sample_uniform_labeled(const ClassSpec& c, int n, int k, const ChainParams& params,
                           std::uint64_t steps, Rng& rng) {
  Nfa x = chain_start(c, n, Alphabet(k));
  for (std::uint64_t t = 0; t < steps; ++t) x = step(x, c, params, rng);
  return x;
}

SampleResult sample_uniform_up_to_iso(const ClassSpec& c, int n, int k, const ChainParams& params,
                                      std::uint64_t steps, Rng& rng, AutCache* cache,
                                      MetropolisVariant variant) {
  MetropolisState s = MetropolisState::start(chain_start(c, n, Alphabet(k)), c, cache);
  for (std::uint64_t t = 0; t < steps; ++t) metropolis_step(s, c, params, rng, cache, variant);
  return {std::move(s.current), std::move(s.aut), s.steps, s.proposals, s.accepted, s.rejected};
}

namespace {

Nfa uniform_draw(const ClassSpec& c, int n, const Alphabet& alphabet, Rng& rng) {
  Nfa a(n, alphabet);
  std::bernoulli_distribution coin(0.5);
  for (State q = 0; q < n; ++q) {
    a.set_initial(q, c.bullet ? q == 0 : coin(rng));
    a.set_final(q, coin(rng));
  }
  for (State p = 0; p < n; ++p) {
    for (Letter x = 0; x < alphabet.size(); ++x) {
      for (State q = 0; q < n; ++q) a.set_transition(p, x, q, coin(rng));
    }
  }
  return a;
}

}  // namespace

RejectionResult naive_rejection_sample(const ClassSpec& c, int n, int k, Rng& rng) {
  if (n > kRejectionMaxStates) throw std::length_error("naive rejection is limited to 6 states");
  c.validate();
  const Alphabet alphabet(k);
  AutCount factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  RejectionResult result{Nfa(n, alphabet), AutCount(0)};
  while (true) {
    Nfa a = uniform_draw(c, n, alphabet, rng);
    ++result.draws;
    if (!in_class(a, c)) continue;
    AutCount aut = count_automorphisms(a);
    const double keep = boost::multiprecision::cpp_rational(aut, factorial).convert_to<double>();
    if (uniform01(rng) < keep || aut == factorial) {
      result.automaton = std::move(a);
      result.aut = std::move(aut);
      return result;
    }
    ++result.rejects;
  }
}

KernelMatrix build_metropolis_matrix(std::vector<Nfa> space, const ClassSpec& c,
                                     const ChainParams& params) {
  KernelMatrix m = build_kernel_matrix(std::move(space), c, params);
  std::vector<AutCount> aut;
  aut.reserve(m.states.size());
  for (const Nfa& x : m.states) aut.push_back(count_automorphisms(x));
  for (int i = 0; i < m.size(); ++i) {
    double leave = 0.0;
    for (int j = 0; j < m.size(); ++j) {
      if (i == j || m.at(i, j) == 0.0) continue;
      m.at(i, j) *= acceptance_probability(aut[i], aut[j]);
      leave += m.at(i, j);
    }
    m.at(i, i) = 1.0 - leave;
  }
  return m;
}

}  // namespace nfagen
