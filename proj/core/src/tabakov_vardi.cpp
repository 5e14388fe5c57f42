#include "nfagen/tabakov_vardi.hpp"

#include <stdexcept>

namespace nfagen {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void TvParams::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Alphabet check(k);
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  if (sigma > n) throw std::invalid_argument("sigma must not exceed n");
  if (!is_probability(p_f)) throw std::invalid_argument("p_f must lie in [0, 1]");
  if (p_i && !is_probability(*p_i)) throw std::invalid_argument("p_i must lie in [0, 1]");
}

Nfa tabakov_vardi(const TvParams& p, Rng& rng) {
  p.validate();
  Nfa a(p.n, Alphabet(p.k));
  std::bernoulli_distribution final_coin(p.p_f);
  std::bernoulli_distribution edge_coin(p.sigma / p.n);
  for (State q = 0; q < p.n; ++q) {
    if (p.p_i) {
      a.set_initial(q, std::bernoulli_distribution(*p.p_i)(rng));
    } else {
      a.set_initial(q, q == 0);
    }
    a.set_final(q, final_coin(rng));
  }
  for (State s = 0; s < p.n; ++s) {
    for (Letter x = 0; x < p.k; ++x) {
      for (State q = 0; q < p.n; ++q) a.set_transition(s, x, q, edge_coin(rng));
    }
  }
  return a;
}

}  // namespace nfagen
