#include "nfagen/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nfagen {

namespace {

constexpr double kRhoTolerance = 1e-12;

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ChainParams::validate(const ClassSpec& c) const {
  if (!in_unit(rho1) || !in_unit(rho2) || !in_unit(rho3)) {
    throw std::invalid_argument("move probabilities must lie in [0, 1]");
  }
  if (rho1 + rho2 + rho3 > 1.0 + kRhoTolerance) {
    throw std::invalid_argument("rho1 + rho2 + rho3 must not exceed 1");
  }
  if (c.bullet) {
    if (rho1 != 0.0) throw std::invalid_argument("bullet classes require rho1 = 0");
    if (rho2 <= 0.0 || rho3 <= 0.0 || std::abs(rho2 + rho3 - 1.0) > kRhoTolerance) {
      throw std::invalid_argument("bullet classes require rho2 = rho, rho3 = 1 - rho, 0 < rho < 1");
    }
  } else if (rho1 <= 0.0 || rho2 <= 0.0 || rho3 <= 0.0) {
    throw std::invalid_argument("rho1, rho2, rho3 must be positive for an ergodic chain");
  }
}

ChainParams default_params(const ClassSpec& c) {
  if (c.bullet) return ChainParams::bullet(0.5);
  return ChainParams::uniform(c.family == Family::kAll);
}

Nfa toggle_initial(const Nfa& a, State q) {
  Nfa out = a;
  out.set_initial(q, !a.is_initial(q));
  return out;
}

Nfa toggle_final(const Nfa& a, State q) {
  Nfa out = a;
  out.set_final(q, !a.is_final(q));
  return out;
}

Nfa toggle_transition(const Nfa& a, State p, Letter x, State q) {
  Nfa out = a;
  out.set_transition(p, x, q, !a.has_transition(p, x, q));
  return out;
}

Nfa apply_move(const Nfa& a, const Move& m) {
  switch (m.kind) {
    case Move::Kind::kHold: return a;
    case Move::Kind::kToggleInitial: return toggle_initial(a, m.p);
    case Move::Kind::kToggleFinal: return toggle_final(a, m.p);
    case Move::Kind::kToggleTransition: return toggle_transition(a, m.p, m.letter, m.q);
  }
  return a;
}

Move propose_move(int n, int k, const ChainParams& params, Rng& rng) {
  if (params.lazy && uniform01(rng) < 0.5) return Move::hold();
  const double u = uniform01(rng);
  if (u < params.rho1) return Move::initial(uniform_index(rng, n));
  if (u < params.rho1 + params.rho2) return Move::final_state(uniform_index(rng, n));
  if (u < params.rho1 + params.rho2 + params.rho3) {
    const int t = uniform_index(rng, k * n * n);
    return Move::transition(t / (k * n), (t / n) % k, t % n);
  }
  return Move::hold();
}

Nfa step(const Nfa& x, const ClassSpec& c, const ChainParams& params, Rng& rng) {
  if (!in_class(x, c)) throw std::invalid_argument("chain state is outside its class");
  const Move m = propose_move(x.num_states(), x.num_letters(), params, rng);
  if (m.kind == Move::Kind::kHold) return x;
  Nfa y = apply_move(x, m);
  return in_class(y, c) ? y : x;
}

namespace {

// Probability of the move that toggles exactly one component, off-diagonal.
struct MoveWeights {
  double initial, final_state, transition;
};

MoveWeights move_weights(int n, int k, const ChainParams& params) {
  const double lazy = params.lazy ? 0.5 : 1.0;
  return {lazy * params.rho1 / n, lazy * params.rho2 / n,
          lazy * params.rho3 / (static_cast<double>(k) * n * n)};
}

template <typename Visit>
void for_each_neighbor(const Nfa& x, const MoveWeights& w, Visit&& visit) {
  const int n = x.num_states();
  const int k = x.num_letters();
  if (w.initial > 0) {
    for (State q = 0; q < n; ++q) visit(toggle_initial(x, q), w.initial);
  }
  if (w.final_state > 0) {
    for (State q = 0; q < n; ++q) visit(toggle_final(x, q), w.final_state);
  }
  if (w.transition > 0) {
    for (State p = 0; p < n; ++p) {
      for (Letter a = 0; a < k; ++a) {
        for (State q = 0; q < n; ++q) visit(toggle_transition(x, p, a, q), w.transition);
      }
    }
  }
}

}  // namespace

double kernel_probability(const Nfa& x, const Nfa& y, const ClassSpec& c,
                          const ChainParams& params) {
  if (x.num_states() != y.num_states() || !(x.alphabet() == y.alphabet())) return 0.0;
  const int n = x.num_states();
  const int k = x.num_letters();
  const MoveWeights w = move_weights(n, k, params);

  if (x == y) {
    double leave = 0.0;
    for_each_neighbor(x, w, [&](const Nfa& z, double p) {
      if (in_class(z, c)) leave += p;
    });
    return 1.0 - leave;
  }

  const std::size_t di = (x.initial() ^ y.initial()).count();
  const std::size_t df = (x.final_states() ^ y.final_states()).count();
  std::size_t dt = 0;
  for (State p = 0; p < n && dt < 2; ++p) {
    for (Letter a = 0; a < k; ++a) dt += (x.successors(p, a) ^ y.successors(p, a)).count();
  }
  if (di + df + dt != 1) return 0.0;
  if (!in_class(y, c)) return 0.0;
  if (di == 1) return w.initial;
  if (df == 1) return w.final_state;
  return w.transition;
}

double KernelMatrix::max_row_sum_error() const {
  double worst = 0.0;
  for (int i = 0; i < size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < size(); ++j) s += at(i, j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

bool KernelMatrix::is_symmetric(double tol) const {
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (std::abs(at(i, j) - at(j, i)) > tol) return false;
    }
  }
  return true;
}

bool KernelMatrix::is_irreducible() const {
  if (size() == 0) return false;
  for (bool forward : {true, false}) {
    std::vector<bool> seen(static_cast<std::size_t>(size()), false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < size(); ++j) {
        const double e = forward ? at(i, j) : at(j, i);
        if (e > 0.0 && !seen[j]) {
          seen[j] = true;
          ++count;
          queue.push_back(j);
        }
      }
    }
    if (count != size()) return false;
  }
  return true;
}

int KernelMatrix::period() const {
  std::vector<int> level(static_cast<std::size_t>(size()), -1);
  std::deque<int> queue{0};
  level[0] = 0;
  int g = 0;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < size(); ++j) {
      if (at(i, j) <= 0.0) continue;
      if (level[j] < 0) {
        level[j] = level[i] + 1;
        queue.push_back(j);
      } else {
        g = std::gcd(g, std::abs(level[i] + 1 - level[j]));
      }
    }
  }
  return g;
}

std::string KernelMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "from,to,probability\n";
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (at(i, j) != 0.0) os << i << ',' << j << ',' << at(i, j) << '\n';
    }
  }
  return os.str();
}

KernelMatrix build_kernel_matrix(std::vector<Nfa> space, const ClassSpec& c,
                                 const ChainParams& params) {
  KernelMatrix m;
  m.states = std::move(space);
  const int size = m.size();
  m.entries.assign(static_cast<std::size_t>(size) * size, 0.0);
  if (size == 0) return m;

  std::unordered_map<std::string, int> index;
  for (int i = 0; i < size; ++i) index.emplace(m.states[i].key(), i);

  const MoveWeights w = move_weights(m.states[0].num_states(), m.states[0].num_letters(), params);
  for (int i = 0; i < size; ++i) {
    double leave = 0.0;
    for_each_neighbor(m.states[i], w, [&](const Nfa& y, double p) {
      if (!in_class(y, c)) return;
      const auto it = index.find(y.key());
      if (it == index.end()) throw std::invalid_argument("state space is not the full class");
      m.at(i, it->second) += p;
      leave += p;
    });
    m.at(i, i) = 1.0 - leave;
  }
  return m;
}

MixingBudget mixing_budget(int n, int k, const ChainParams& params, double epsilon) {
  if (n < 1 || k < 1) throw std::invalid_argument("mixing_budget needs n >= 1 and k >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("mixing_budget needs 0 < epsilon <= 1");
  }
  if (params.rho1 <= 0.0 || params.rho2 <= 0.0 || params.rho3 <= 0.0) {
    throw std::invalid_argument("mixing_budget needs rho1, rho2, rho3 > 0");
  }
  auto term = [&](long double dim, long double rho) {
    const long double value =
        dim / rho * (std::log(dim) + std::log(1.0L / (rho * static_cast<long double>(epsilon))));
    return static_cast<std::uint64_t>(std::ceil(value));
  };
  const long double nn = n;
  const long double cube = static_cast<long double>(k) * nn * nn;
  const std::uint64_t steps = std::max({term(nn, params.rho1), term(nn, params.rho2),
                                        term(cube, params.rho3), std::uint64_t{1}});
  return {epsilon, steps};
}

std::uint64_t default_steps(int n) {
  const auto v = static_cast<std::uint64_t>(n);
  return v * v * v;
}

}  // namespace nfagen
