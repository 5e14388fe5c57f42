#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nfagen/nfa.hpp"
#include "nfagen/random.hpp"

namespace nfagen {

// Move-type probabilities of the symmetric kernel S_{rho1,rho2,rho3}. The
// residual mass 1 - rho1 - rho2 - rho3 is a hold. When `lazy` is set every
// step first holds with probability 1/2.
struct ChainParams {
  double rho1 = 1.0 / 3.0;
  double rho2 = 1.0 / 3.0;
  double rho3 = 1.0 / 3.0;
  bool lazy = false;

  static ChainParams uniform(bool lazy = false) {
    return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, lazy};
  }
  // The kernel on bullet classes: S_rho = S_{0, rho, 1 - rho}.
  static ChainParams bullet(double rho, bool lazy = false) { return {0.0, rho, 1.0 - rho, lazy}; }

  double hold() const { return 1.0 - rho1 - rho2 - rho3; }

  // Range checks, plus the ergodicity hypotheses: all rho > 0 for
  // non-bullet classes; rho1 == 0 and rho2 + rho3 == 1 for bullet classes.
  void validate(const ClassSpec& c) const;
};

// Lazy for A(n), plain for the restricted classes; bullet classes use rho = 1/2.
ChainParams default_params(const ClassSpec& c);

struct Move {
  enum class Kind { kHold, kToggleInitial, kToggleFinal, kToggleTransition };

  Kind kind = Kind::kHold;
  State p = 0;  // target state for initial/final toggles, source for transitions
  Letter letter = 0;
  State q = 0;

  static Move hold() { return {}; }
  static Move initial(State q) { return {Kind::kToggleInitial, q, 0, 0}; }
  static Move final_state(State q) { return {Kind::kToggleFinal, q, 0, 0}; }
  static Move transition(State p, Letter a, State q) {
    return {Kind::kToggleTransition, p, a, q};
  }
};

Nfa toggle_initial(const Nfa& a, State q);
Nfa toggle_final(const Nfa& a, State q);
Nfa toggle_transition(const Nfa& a, State p, Letter x, State q);
Nfa apply_move(const Nfa& a, const Move& m);

// Two-stage proposal: move type by rho (after the lazy coin, if any), then a
// uniform target among the n states or the k*n^2 triples.
Move propose_move(int n, int k, const ChainParams& params, Rng& rng);

// One draw from S^X: the proposal is kept iff it stays in `c`.
// Throws std::invalid_argument if `x` is not in `c`.
Nfa step(const Nfa& x, const ClassSpec& c, const ChainParams& params, Rng& rng);

// Exact one-step probability x -> y, diagonal included. Both must be in `c`.
double kernel_probability(const Nfa& x, const Nfa& y, const ClassSpec& c,
                          const ChainParams& params);

// Dense row-stochastic matrix over an explicitly enumerated class.
struct KernelMatrix {
  std::vector<Nfa> states;
  std::vector<double> entries;  // row-major, size() * size()

  int size() const { return static_cast<int>(states.size()); }
  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * size() + j]; }
  double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * size() + j]; }

  double max_row_sum_error() const;
  bool is_symmetric(double tol) const;
  // Strongly connected underlying graph (edges where entry > 0).
  bool is_irreducible() const;
  // gcd of cycle lengths, computed for an irreducible matrix.
  int period() const;
  // One line per nonzero entry: "i,j,probability", states as their index.
  std::string to_csv() const;
};

// `space` must contain exactly the members of `c` with a common n and alphabet.
KernelMatrix build_kernel_matrix(std::vector<Nfa> space, const ClassSpec& c,
                                 const ChainParams& params);

struct MixingBudget {
  double epsilon;
  std::uint64_t steps;
};

// Upper bound on the epsilon-mixing time of the lazy chain on A(n):
// max over the three hypercube walks of ceil(d/rho * (log d + log(1/(rho eps))))
// with d = n, n, k n^2. Natural logarithms.
MixingBudget mixing_budget(int n, int k, const ChainParams& params, double epsilon);

// The empirical n^3 budget used by every sampler unless overridden.
std::uint64_t default_steps(int n);

}  // namespace nfagen
