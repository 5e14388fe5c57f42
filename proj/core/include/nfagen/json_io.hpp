#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nfagen/nfa.hpp"

namespace nfagen {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedAutomaton {
  Nfa nfa;
  // Set when the document listed the same transition more than once.
  bool had_duplicates = false;
};

// Reads {"n": int, "alphabet": int, "initial": [...], "final": [...],
//        "transitions": [[p, "x", q], ...]}
// with 1-based states. Throws ParseError on malformed documents, states
// outside 1..n and letters outside the alphabet.
ParsedAutomaton parse_automaton(std::string_view text);

// Canonical single-line rendering: keys in the order above, state lists
// ascending, transitions sorted by (p, letter, q).
std::string serialize_automaton(const Nfa& a);

// Graphviz rendering: doubled circle for final states, an arrow from an
// invisible point for initial states.
std::string to_dot(const Nfa& a, std::string_view name = "nfa");

}  // namespace nfagen
