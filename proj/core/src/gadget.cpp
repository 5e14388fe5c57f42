#include "nfagen/gadget.hpp"

#include <algorithm>
#include <stdexcept>

namespace nfagen {

GadgetSpec GadgetSpec::with_sorted_fixed(Nfa base, std::vector<State> fixed, State pinned,
                                         Letter a0) {
  std::sort(fixed.begin(), fixed.end());
  return {std::move(base), std::move(fixed), pinned, a0};
}

int GadgetSpec::tail_length(State p) const {
  const int n = base.num_states();
  if (p == pinned) return tail_bound();
  const auto it = std::find(fixed.begin(), fixed.end(), p);
  if (it != fixed.end()) return n + 1 + static_cast<int>(it - fixed.begin()) + 1;
  return n + 1;
}

Nfa build_gadget(const GadgetSpec& g) {
  const Nfa& base = g.base;
  const int n = base.num_states();
  if (g.pinned < 0 || g.pinned >= n) throw std::invalid_argument("pinned state out of range");
  if (g.a0 < 0 || g.a0 >= base.num_letters()) throw std::invalid_argument("a0 is not a letter");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (State p : g.fixed) {
    if (p < 0 || p >= n) throw std::invalid_argument("fixed state out of range");
    if (seen[p]) throw std::invalid_argument("fixed states must be distinct");
    seen[p] = true;
  }
  if (seen[g.pinned]) throw std::invalid_argument("the pinned state must not be fixed");
  if (!is_trim(base)) throw std::invalid_argument("gadgets need a trim base automaton");

  int total = n;
  for (State p = 0; p < n; ++p) total += g.tail_length(p);
  Nfa out(total, base.alphabet());
  for (State q = 0; q < n; ++q) {
    out.set_initial(q, base.is_initial(q));
    out.set_final(q, base.is_final(q));
  }
  for (const Transition& t : base.transitions()) out.add_transition(t.from, t.letter, t.to);
  State next = n;
  for (State p = 0; p < n; ++p) {
    State prev = p;
    for (int i = 0; i < g.tail_length(p); ++i) {
      out.add_transition(prev, g.a0, next);
      prev = next++;
    }
  }
  return out;
}

ViaIsoCount count_automorphisms_via_iso(const Nfa& a, Letter a0) {
  if (!is_trim(a)) throw std::invalid_argument("counting through gadgets needs a trim automaton");
  const int n = a.num_states();
  ViaIsoCount result{AutCount(1), {}};
  std::vector<State> fixed(static_cast<std::size_t>(n));
  for (State q = 0; q < n; ++q) fixed[q] = q;
  for (State q = n - 1; q >= 0; --q) {
    fixed.pop_back();
    const Nfa own = build_gadget(GadgetSpec{a, fixed, q, a0});
    int d = 0;
    for (State p = q; p < n; ++p) {
      const Nfa other = p == q ? own : build_gadget(GadgetSpec{a, fixed, p, a0});
      if (p == q || are_isomorphic(own, other)) ++d;
    }
    result.orbit_sizes.push_back(d);
    result.order *= d;
  }
  return result;
}

}  // namespace nfagen
