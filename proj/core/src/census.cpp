#include "nfagen/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "nfagen/json_io.hpp"

namespace nfagen {

int enumeration_bits(const ClassSpec& c, int n, int k) {
  return (c.bullet ? 0 : n) + n + k * n * n;
}

void enumerate_class(const ClassSpec& c, int n, int k,
                     const std::function<void(const Nfa&)>& visit) {
  c.validate();
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  const Alphabet alphabet(k);
  const int bits = enumeration_bits(c, n, k);
  if (bits > kEnumerationGuard) throw std::length_error("class too large to enumerate");
  const std::uint64_t end = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    Nfa a(n, alphabet);
    int bit = 0;
    auto next_bit = [&] { return ((mask >> bit++) & 1U) != 0; };
    for (State q = 0; q < n; ++q) a.set_initial(q, c.bullet ? q == 0 : next_bit());
    for (State q = 0; q < n; ++q) a.set_final(q, next_bit());
    for (State p = 0; p < n; ++p) {
      for (Letter x = 0; x < k; ++x) {
        for (State q = 0; q < n; ++q) a.set_transition(p, x, q, next_bit());
      }
    }
    if (in_class(a, c)) visit(a);
  }
}

std::vector<Nfa> enumerate_members(const ClassSpec& c, int n, int k) {
  std::vector<Nfa> out;
  enumerate_class(c, n, k, [&](const Nfa& a) { out.push_back(a); });
  return out;
}

std::size_t CensusReport::index_of(const std::string& canonical) const {
  const auto it = index.find(canonical);
  if (it == index.end()) throw std::out_of_range("automaton outside the census");
  return it->second;
}

std::string CensusReport::to_json() const {
  nlohmann::json doc;
  doc["class"] = spec.name();
  doc["n"] = n;
  doc["alphabet"] = k;
  doc["total"] = total;
  doc["gamma"] = gamma();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& cls : classes) {
    list.push_back({{"canonical", digest(cls.canonical)},
                    {"automaton", nlohmann::json::parse(serialize_automaton(cls.representative))},
                    {"size", cls.labeled_count},
                    {"aut", cls.aut.str()}});
  }
  doc["classes"] = std::move(list);
  return doc.dump();
}

CensusReport census(const ClassSpec& c, int n, int k) {
  CensusReport r;
  r.spec = c;
  r.n = n;
  r.k = k;
  std::map<std::string, std::pair<std::uint64_t, Nfa>> counts;
  enumerate_class(c, n, k, [&](const Nfa& a) {
    Nfa canon = canonical_automaton(a);
    auto [it, inserted] = counts.try_emplace(canon.key(), 0, canon);
    ++it->second.first;
    ++r.total;
  });
  // Relabelings of a bullet automaton stay in the class iff they fix state 0.
  AutCount factorial = 1;
  for (int i = 2; i <= (c.bullet ? n - 1 : n); ++i) factorial *= i;
  for (const auto& [form, entry] : counts) {
    const auto& [count, representative] = entry;
    CensusClass cls{form, representative, count, 0};
    cls.aut = count_automorphisms(cls.representative);
    if (AutCount(count) * cls.aut != factorial) {
      throw std::logic_error("census class size differs from the orbit size");
    }
    r.index.emplace(form, r.classes.size());
    r.classes.push_back(std::move(cls));
  }
  return r;
}

void Distribution::validate() const {
  if (support.size() != probability.size()) {
    throw std::invalid_argument("distribution support and probabilities differ in length");
  }
  double sum = 0.0;
  for (double p : probability) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("probabilities do not sum to 1");
}

std::string Distribution::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "class,probability\n";
  for (std::size_t i = 0; i < support.size(); ++i) {
    os << digest(support[i]) << ',' << probability[i] << '\n';
  }
  return os.str();
}

double tv_distance(const Distribution& p, const Distribution& q) {
  if (p.support != q.support) throw std::invalid_argument("distributions over different outcomes");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.probability.size(); ++i) {
    sum += std::abs(p.probability[i] - q.probability[i]);
  }
  return std::min(1.0, sum / 2.0);
}

namespace {

Distribution over_classes(const CensusReport& r) {
  Distribution d;
  for (const auto& cls : r.classes) d.support.push_back(cls.canonical);
  d.probability.assign(r.classes.size(), 0.0);
  return d;
}

}  // namespace

Distribution class_uniform_law(const CensusReport& r) {
  Distribution d = over_classes(r);
  std::fill(d.probability.begin(), d.probability.end(), 1.0 / static_cast<double>(r.gamma()));
  return d;
}

Distribution labeled_uniform_law(const CensusReport& r) {
  Distribution d = over_classes(r);
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    d.probability[i] =
        static_cast<double>(r.classes[i].labeled_count) / static_cast<double>(r.total);
  }
  return d;
}

ClassTally::ClassTally(const CensusReport& r) : report_(&r), counts_(r.classes.size(), 0) {}

void ClassTally::add(const Nfa& a) { add_index(report_->index_of(canonical_form(a))); }

void ClassTally::add_index(std::size_t class_index, std::uint64_t count) {
  counts_.at(class_index) += count;
  total_ += count;
}

Distribution ClassTally::distribution() const {
  if (total_ == 0) throw std::invalid_argument("no samples");
  Distribution d = over_classes(*report_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    d.probability[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  }
  return d;
}

Distribution empirical_class_distribution(const std::vector<Nfa>& samples, const CensusReport& r) {
  ClassTally tally(r);
  for (const Nfa& a : samples) tally.add(a);
  return tally.distribution();
}

Distribution class_law(const KernelMatrix& m, const std::vector<double>& state_law,
                       const CensusReport& r) {
  Distribution d = over_classes(r);
  for (int i = 0; i < m.size(); ++i) {
    d.probability[r.index_of(canonical_form(m.states[i]))] += state_law[i];
  }
  return d;
}

std::vector<double> exact_stationary(const KernelMatrix& m) {
  const int size = m.size();
  if (size == 0) throw std::invalid_argument("empty kernel");
  if (!m.is_irreducible()) throw std::invalid_argument("kernel is reducible");
  Eigen::MatrixXd a(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) a(j, i) = m.at(i, j);
  }
  a -= Eigen::MatrixXd::Identity(size, size);
  a.row(size - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
  b(size - 1) = 1.0;
  const Eigen::VectorXd pi = a.partialPivLu().solve(b);
  return {pi.data(), pi.data() + size};
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nfagen
