#pragma once

#include <optional>

#include "nfagen/nfa.hpp"
#include "nfagen/random.hpp"

namespace nfagen {

// Random automata of the Tabakov-Vardi model: every triple (p, a, q) is a
// transition with probability sigma/n, every state is final with
// probability p_f. Without p_i the only initial state is 0.
struct TvParams {
  int n = 1;
  int k = 2;
  double sigma = 2.0;
  double p_f = 0.2;
  std::optional<double> p_i;

  // Throws std::invalid_argument for sigma < 0, sigma > n, probabilities
  // outside [0, 1] or an invalid size.
  void validate() const;
};

Nfa tabakov_vardi(const TvParams& p, Rng& rng);

}  // namespace nfagen
