#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nfagen/nfa.hpp"

namespace nfagen {

// |Aut| reaches n! (for instance on all_initial_final), so it is unbounded.
using AutCount = boost::multiprecision::cpp_int;

// phi(a) == b.
struct IsoWitness {
  Permutation phi;
};

// Exact test. Returns nullopt at once when the sizes, alphabets or label
// multisets differ; otherwise searches label-respecting bijections.
std::optional<IsoWitness> are_isomorphic(const Nfa& a, const Nfa& b);

struct AutomorphismGroup {
  AutCount order;
  // Generates the group; empty when it is trivial.
  std::vector<Permutation> generators;
};

// Orbit-stabilizer over the label partition: individualize a state of the
// smallest ambiguous cell, count its orbit with isomorphism tests, recurse
// into the stabilizer.
AutomorphismGroup automorphism_group(const Nfa& a);
AutCount count_automorphisms(const Nfa& a);

// Enumerates every permutation that maps each label cell onto itself and
// counts the automorphisms among them. Throws std::length_error when the
// number of candidates exceeds `max_candidates`.
AutCount count_automorphisms_enumerate(const Nfa& a, std::uint64_t max_candidates = 50'000'000);

inline constexpr int kBruteForceMaxStates = 8;

// Tries all n! permutations. Throws std::length_error for n > 8.
AutCount count_automorphisms_bruteforce(const Nfa& a);

enum class CanonicalMode {
  kAuto,        // exhaustive up to kCanonicalGuard states, pruned above
  kExhaustive,  // minimum over all label-respecting permutations
  kPruned,      // minimum over the leaves of the refinement search tree
};

inline constexpr int kCanonicalGuard = 8;

// A byte string equal for two automata iff they are isomorphic: the smallest
// Nfa::key() among the relabelings the mode explores. Throws
// std::length_error in kExhaustive mode above the guard.
std::string canonical_form(const Nfa& a, CanonicalMode mode = CanonicalMode::kAuto);
Nfa canonical_automaton(const Nfa& a, CanonicalMode mode = CanonicalMode::kAuto);

}  // namespace nfagen
