#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace nfagen {

// States are indexed 0..n-1 in the C++ API. Every external format (JSON,
// DOT, CLI output) names them 1..n.
using State = int;
using Letter = int;
using StateSet = boost::dynamic_bitset<std::uint64_t>;

class Alphabet {
 public:
  static constexpr int kMaxSize = 26;

  explicit Alphabet(int size);

  int size() const { return size_; }
  // "a", "b", ... in rank order.
  char letter_name(Letter a) const { return static_cast<char>('a' + a); }
  // Returns -1 if `c` is not a letter of this alphabet.
  Letter letter_of(char c) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int size_;
};

struct Transition {
  State from;
  Letter letter;
  State to;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// A labeled nondeterministic automaton (Q, Sigma, Delta, I, F) with Q = {0..n-1}.
// Transitions are stored as one successor bitset per (state, letter) pair.
class Nfa {
 public:
  Nfa(int num_states, Alphabet alphabet);

  int num_states() const { return n_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int num_letters() const { return alphabet_.size(); }

  const StateSet& initial() const { return initial_; }
  const StateSet& final_states() const { return final_; }
  bool is_initial(State q) const { return initial_.test(check_state(q)); }
  bool is_final(State q) const { return final_.test(check_state(q)); }

  const StateSet& successors(State p, Letter a) const;
  bool has_transition(State p, Letter a, State q) const;
  std::size_t num_transitions() const;
  // Sorted by (from, letter, to).
  std::vector<Transition> transitions() const;
  int out_degree(State p) const;
  int out_degree(State p, Letter a) const;

  void set_initial(State q, bool value = true);
  void set_final(State q, bool value = true);
  void set_transition(State p, Letter a, State q, bool value = true);
  void add_transition(State p, Letter a, State q) { set_transition(p, a, q, true); }

  // Hashable byte encoding of the labeled automaton; two automata are equal
  // iff their keys are equal. Also used as the order for canonical forms.
  std::string key() const;

  friend bool operator==(const Nfa& lhs, const Nfa& rhs);

 private:
  State check_state(State q) const;
  Letter check_letter(Letter a) const;
  std::size_t slot(State p, Letter a) const {
    return static_cast<std::size_t>(p) * alphabet_.size() + a;
  }

  int n_;
  Alphabet alphabet_;
  StateSet initial_;
  StateSet final_;
  std::vector<StateSet> delta_;
};

enum class Family { kAll, kTrim, kDegTotal, kDegPerLetter };

// One of the automaton classes A(n), N(n), N_m(n), N'_m(n), optionally
// restricted to the single initial state 0 ("bullet" classes).
struct ClassSpec {
  Family family = Family::kAll;
  int m = 0;
  bool bullet = false;

  static ClassSpec all() { return {Family::kAll, 0, false}; }
  static ClassSpec trim(bool bullet = false) { return {Family::kTrim, 0, bullet}; }
  static ClassSpec deg_total(int m, bool bullet = false) {
    return {Family::kDegTotal, m, bullet};
  }
  static ClassSpec deg_per_letter(int m, bool bullet = false) {
    return {Family::kDegPerLetter, m, bullet};
  }

  // Throws std::invalid_argument on m < 2 for bounded families.
  void validate() const;
  std::string name() const;

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

class Permutation {
 public:
  explicit Permutation(std::vector<State> image);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  State operator()(State q) const { return image_[q]; }
  const std::vector<State>& image() const { return image_; }
  Permutation inverse() const;
  // (this * other)(q) = this(other(q)).
  Permutation compose(const Permutation& other) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<State> image_;
};

bool is_accessible(const Nfa& a);
bool is_coaccessible(const Nfa& a);
bool is_trim(const Nfa& a);
// States reachable from some initial state (resp. reaching some final state).
StateSet accessible_states(const Nfa& a);
StateSet coaccessible_states(const Nfa& a);

bool in_class(const Nfa& a, const ClassSpec& c);

Nfa apply_permutation(const Nfa& a, const Permutation& phi);
// True iff phi(a) == a.
bool is_automorphism(const Nfa& a, const Permutation& phi);

// (Q, Sigma, {}, Q, Q): trim, in every non-bullet class, |Aut| = n!.
Nfa all_initial_final(int n, Alphabet alphabet);
// I = {0}, F = Q, transitions (i, a0, i+1): the start point of bullet chains.
Nfa letter_chain(int n, Alphabet alphabet, Letter a0 = 0);
// The deterministic start state used for a chain on class `c`.
Nfa chain_start(const ClassSpec& c, int n, Alphabet alphabet);

}  // namespace nfagen
