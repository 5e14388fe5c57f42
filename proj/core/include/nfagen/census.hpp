#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nfagen/chain.hpp"
#include "nfagen/isomorphism.hpp"
#include "nfagen/nfa.hpp"

namespace nfagen {

// Enumeration is limited to k n^2 + 2n <= 26 free bits.
inline constexpr int kEnumerationGuard = 26;

int enumeration_bits(const ClassSpec& c, int n, int k);

// Calls visit on every member of `c` exactly once, iterating the bitmask
// (I, F, Delta) in increasing order. Throws std::length_error past the guard.
void enumerate_class(const ClassSpec& c, int n, int k, const std::function<void(const Nfa&)>& visit);
std::vector<Nfa> enumerate_members(const ClassSpec& c, int n, int k);

struct CensusClass {
  std::string canonical;
  Nfa representative;  // the canonical automaton
  std::uint64_t labeled_count = 0;
  AutCount aut;
};

struct CensusReport {
  ClassSpec spec;
  int n = 0;
  int k = 0;
  std::uint64_t total = 0;
  std::vector<CensusClass> classes;  // sorted by canonical form

  std::uint64_t gamma() const { return classes.size(); }
  // Throws std::out_of_range for a form that is not in the census.
  std::size_t index_of(const std::string& canonical) const;
  std::string to_json() const;

  std::unordered_map<std::string, std::size_t> index;
};

// Groups the class by canonical form. Throws std::logic_error if a class
// size differs from n!/|Aut| ((n-1)!/|Aut| for bullet classes, whose
// relabelings must fix state 0).
CensusReport census(const ClassSpec& c, int n, int k);

// A probability vector over named outcomes (isomorphism classes, usually).
struct Distribution {
  std::vector<std::string> support;
  std::vector<double> probability;

  // Throws std::invalid_argument unless nonnegative and summing to 1 +- 1e-9.
  void validate() const;
  // "class,probability" with the class as a 64-bit hex digest.
  std::string to_csv() const;
};

// (1/2) sum |p - q|. Throws std::invalid_argument when the supports differ.
double tv_distance(const Distribution& p, const Distribution& q);

Distribution class_uniform_law(const CensusReport& r);
// Probability of a class under the uniform law on labeled automata.
Distribution labeled_uniform_law(const CensusReport& r);

// Streaming class frequencies.
class ClassTally {
 public:
  explicit ClassTally(const CensusReport& r);

  // Throws std::out_of_range for an automaton outside the census.
  void add(const Nfa& a);
  void add_index(std::size_t class_index, std::uint64_t count = 1);
  std::uint64_t total() const { return total_; }
  Distribution distribution() const;

 private:
  const CensusReport* report_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

Distribution empirical_class_distribution(const std::vector<Nfa>& samples, const CensusReport& r);

// Lumps a law over the states of `m` into classes.
Distribution class_law(const KernelMatrix& m, const std::vector<double>& state_law,
                       const CensusReport& r);

// Unique pi with pi M = pi, sum pi = 1, by a dense LU solve. Throws
// std::invalid_argument when `m` is reducible.
std::vector<double> exact_stationary(const KernelMatrix& m);

// 64-bit FNV-1a digest, for display.
std::string digest(const std::string& bytes);

}  // namespace nfagen
