#include "nfagen/nfa.hpp"

#include <numeric>
#include <stdexcept>

namespace nfagen {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 2 || size > kMaxSize) {
    throw std::invalid_argument("alphabet size must be in [2, 26], got " +
                                std::to_string(size));
  }
}

Letter Alphabet::letter_of(char c) const {
  const int a = c - 'a';
  return (a >= 0 && a < size_) ? a : -1;
}

Nfa::Nfa(int num_states, Alphabet alphabet)
    : n_(num_states),
      alphabet_(alphabet),
      initial_(static_cast<std::size_t>(num_states)),
      final_(static_cast<std::size_t>(num_states)) {
  if (num_states < 1) {
    throw std::invalid_argument("an automaton needs at least one state");
  }
  delta_.assign(static_cast<std::size_t>(n_) * alphabet_.size(),
                StateSet(static_cast<std::size_t>(n_)));
}

State Nfa::check_state(State q) const {
  if (q < 0 || q >= n_) {
    throw std::out_of_range("state " + std::to_string(q) + " outside 0.." +
                            std::to_string(n_ - 1));
  }
  return q;
}

Letter Nfa::check_letter(Letter a) const {
  if (a < 0 || a >= alphabet_.size()) {
    throw std::out_of_range("letter index " + std::to_string(a) + " out of range");
  }
  return a;
}

const StateSet& Nfa::successors(State p, Letter a) const {
  return delta_[slot(check_state(p), check_letter(a))];
}

bool Nfa::has_transition(State p, Letter a, State q) const {
  return successors(p, a).test(check_state(q));
}

std::size_t Nfa::num_transitions() const {
  std::size_t total = 0;
  for (const auto& s : delta_) total += s.count();
  return total;
}

std::vector<Transition> Nfa::transitions() const {
  std::vector<Transition> out;
  for (State p = 0; p < n_; ++p) {
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      const StateSet& succ = delta_[slot(p, a)];
      for (auto q = succ.find_first(); q != StateSet::npos; q = succ.find_next(q)) {
        out.push_back({p, a, static_cast<State>(q)});
      }
    }
  }
  return out;
}

int Nfa::out_degree(State p) const {
  int d = 0;
  for (Letter a = 0; a < alphabet_.size(); ++a) d += out_degree(p, a);
  return d;
}

int Nfa::out_degree(State p, Letter a) const {
  return static_cast<int>(successors(p, a).count());
}

void Nfa::set_initial(State q, bool value) { initial_.set(check_state(q), value); }

void Nfa::set_final(State q, bool value) { final_.set(check_state(q), value); }

void Nfa::set_transition(State p, Letter a, State q, bool value) {
  delta_[slot(check_state(p), check_letter(a))].set(check_state(q), value);
}

std::string Nfa::key() const {
  // Layout: n, k, one flag byte per state (bit0 initial, bit1 final), then
  // the successor bitset of every (p, a) as little-endian bytes.
  const std::size_t row_bytes = (static_cast<std::size_t>(n_) + 7) / 8;
  std::string out;
  out.reserve(2 + n_ + delta_.size() * row_bytes);
  out.push_back(static_cast<char>(n_ & 0xff));
  out.push_back(static_cast<char>(alphabet_.size()));
  for (State q = 0; q < n_; ++q) {
    out.push_back(static_cast<char>((initial_.test(q) ? 1 : 0) | (final_.test(q) ? 2 : 0)));
  }
  for (const auto& succ : delta_) {
    std::string row(row_bytes, '\0');
    for (auto q = succ.find_first(); q != StateSet::npos; q = succ.find_next(q)) {
      row[q / 8] = static_cast<char>(row[q / 8] | (1 << (q % 8)));
    }
    out += row;
  }
  return out;
}

bool operator==(const Nfa& lhs, const Nfa& rhs) {
  return lhs.n_ == rhs.n_ && lhs.alphabet_ == rhs.alphabet_ &&
         lhs.initial_ == rhs.initial_ && lhs.final_ == rhs.final_ &&
         lhs.delta_ == rhs.delta_;
}

void ClassSpec::validate() const {
  if ((family == Family::kDegTotal || family == Family::kDegPerLetter) && m < 2) {
    throw std::invalid_argument("degree-bounded classes need m >= 2");
  }
}

std::string ClassSpec::name() const {
  std::string s;
  switch (family) {
    case Family::kAll: s = "A"; break;
    case Family::kTrim: s = "N"; break;
    case Family::kDegTotal: s = "N_" + std::to_string(m); break;
    case Family::kDegPerLetter: s = "N'_" + std::to_string(m); break;
  }
  if (bullet) s += "*";
  return s;
}

Permutation::Permutation(std::vector<State> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (State q : image_) {
    if (q < 0 || q >= size() || seen[q]) {
      throw std::invalid_argument("permutation image is not a bijection");
    }
    seen[q] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<State> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<State> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<State>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<State> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = image_[other.image_[i]];
  return Permutation(std::move(out));
}

namespace {

StateSet closure(const Nfa& a, StateSet frontier, bool forward) {
  const int n = a.num_states();
  const int k = a.num_letters();
  StateSet seen = frontier;
  // Predecessor sets are not stored, so the backward pass scans all rows.
  while (frontier.any()) {
    StateSet next(static_cast<std::size_t>(n));
    if (forward) {
      for (auto p = frontier.find_first(); p != StateSet::npos; p = frontier.find_next(p)) {
        for (Letter x = 0; x < k; ++x) next |= a.successors(static_cast<State>(p), x);
      }
    } else {
      for (State p = 0; p < n; ++p) {
        if (seen.test(p)) continue;
        for (Letter x = 0; x < k; ++x) {
          if (a.successors(p, x).intersects(frontier)) {
            next.set(p);
            break;
          }
        }
      }
    }
    next -= seen;
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

StateSet accessible_states(const Nfa& a) { return closure(a, a.initial(), true); }

StateSet coaccessible_states(const Nfa& a) { return closure(a, a.final_states(), false); }

bool is_accessible(const Nfa& a) { return accessible_states(a).all(); }

bool is_coaccessible(const Nfa& a) { return coaccessible_states(a).all(); }

bool is_trim(const Nfa& a) { return is_accessible(a) && is_coaccessible(a); }

bool in_class(const Nfa& a, const ClassSpec& c) {
  if (c.bullet) {
    if (a.initial().count() != 1 || !a.is_initial(0)) return false;
  }
  switch (c.family) {
    case Family::kAll:
      return true;
    case Family::kTrim:
      return is_trim(a);
    case Family::kDegTotal:
      for (State p = 0; p < a.num_states(); ++p) {
        if (a.out_degree(p) > c.m) return false;
      }
      return is_trim(a);
    case Family::kDegPerLetter:
      for (State p = 0; p < a.num_states(); ++p) {
        for (Letter x = 0; x < a.num_letters(); ++x) {
          if (a.out_degree(p, x) > c.m) return false;
        }
      }
      return is_trim(a);
  }
  return false;
}

Nfa apply_permutation(const Nfa& a, const Permutation& phi) {
  if (phi.size() != a.num_states()) {
    throw std::invalid_argument("permutation size does not match the automaton");
  }
  Nfa out(a.num_states(), a.alphabet());
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_initial(q)) out.set_initial(phi(q));
    if (a.is_final(q)) out.set_final(phi(q));
  }
  for (const Transition& t : a.transitions()) out.add_transition(phi(t.from), t.letter, phi(t.to));
  return out;
}

bool is_automorphism(const Nfa& a, const Permutation& phi) {
  if (phi.size() != a.num_states()) return false;
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_initial(q) != a.is_initial(phi(q)) || a.is_final(q) != a.is_final(phi(q))) {
      return false;
    }
  }
  for (const Transition& t : a.transitions()) {
    if (!a.has_transition(phi(t.from), t.letter, phi(t.to))) return false;
  }
  return true;
}

Nfa all_initial_final(int n, Alphabet alphabet) {
  Nfa a(n, alphabet);
  for (State q = 0; q < n; ++q) {
    a.set_initial(q);
    a.set_final(q);
  }
  return a;
}

Nfa letter_chain(int n, Alphabet alphabet, Letter a0) {
  Nfa a(n, alphabet);
  a.set_initial(0);
  for (State q = 0; q < n; ++q) a.set_final(q);
  for (State q = 0; q + 1 < n; ++q) a.add_transition(q, a0, q + 1);
  return a;
}

Nfa chain_start(const ClassSpec& c, int n, Alphabet alphabet) {
  return c.bullet ? letter_chain(n, alphabet) : all_initial_final(n, alphabet);
}

}  // namespace nfagen
