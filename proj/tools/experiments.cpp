#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nfagen/census.hpp"
#include "nfagen/dfa.hpp"
#include "nfagen/parallel.hpp"
#include "nfagen/tabakov_vardi.hpp"

namespace nfagen::cli {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kExperiments{"trim-rate", "aut-sizes", "min-dfa", "tv-check",
                                            "timing"};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ClassSpec class_from_token(const std::string& family, int m, bool bullet) {
  if (family == "all") return {Family::kAll, 0, bullet};
  if (family == "trim") return ClassSpec::trim(bullet);
  if (family == "deg") return ClassSpec::deg_total(m, bullet);
  if (family == "deg-letter") return ClassSpec::deg_per_letter(m, bullet);
  throw std::invalid_argument("unknown class \"" + family + "\"");
}

nlohmann::json cell_header(const ExperimentConfig& c, int n, double seconds) {
  return {{"n", n}, {"class", c.spec.name()}, {"seconds", seconds}};
}

nlohmann::json trim_rate(const ExperimentConfig& c, int n, int threads) {
  const auto t0 = Clock::now();
  SamplerConfig cfg = c.sampler(n);
  std::vector<char> trim(c.count, 0);
  for_each_sample(
      cfg, c.seed, c.count,
      [&](std::size_t i, const SampleResult& s) { trim[i] = is_trim(s.automaton); }, nullptr,
      threads);
  const auto hits = std::count(trim.begin(), trim.end(), 1);
  nlohmann::json cell = cell_header(c, n, seconds_since(t0));
  cell["samples"] = c.count;
  cell["trim"] = hits;
  cell["trim_proportion"] = static_cast<double>(hits) / static_cast<double>(c.count);
  return cell;
}

nlohmann::json aut_sizes(const ExperimentConfig& c, int n, int threads) {
  const auto t0 = Clock::now();
  AutCache cache;
  std::vector<double> aut(c.count), accept(c.count);
  AutCount largest = 0;
  std::mutex mutex;
  for_each_sample(
      c.sampler(n), c.seed, c.count,
      [&](std::size_t i, const SampleResult& s) {
        aut[i] = s.aut.convert_to<double>();
        accept[i] = s.accept_rate();
        std::lock_guard lock(mutex);
        largest = std::max(largest, s.aut);
      },
      &cache, threads);
  nlohmann::json cell = cell_header(c, n, seconds_since(t0));
  cell["samples"] = c.count;
  cell["aut_mean"] = std::accumulate(aut.begin(), aut.end(), 0.0) / static_cast<double>(c.count);
  cell["aut_max"] = largest.str();
  if (c.up_to_iso) {
    cell["accept_rate"] =
        std::accumulate(accept.begin(), accept.end(), 0.0) / static_cast<double>(c.count);
  }
  return cell;
}

nlohmann::json min_dfa(const ExperimentConfig& c, int n, int threads) {
  const auto t0 = Clock::now();
  AutCache cache;
  std::vector<int> complete(c.count), trim(c.count), subsets(c.count);
  for_each_sample(
      c.sampler(n), c.seed, c.count,
      [&](std::size_t i, const SampleResult& s) {
        const Dfa d = determinize(s.automaton);
        const MinimizationResult m = minimize(d);
        subsets[i] = d.num_states();
        complete[i] = m.complete_size;
        trim[i] = m.trim_size;
      },
      &cache, threads);
  const double count = static_cast<double>(c.count);
  auto mean = [&](const std::vector<int>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / count;
  };
  nlohmann::json cell = cell_header(c, n, 0.0);
  cell["samples"] = c.count;
  cell["dfa_mean"] = mean(subsets);
  cell["minimal_mean"] = mean(complete);
  cell["minimal_trim_mean"] = mean(trim);
  for (double sigma : c.sigmas) {
    Rng rng = make_rng(c.seed, static_cast<std::uint64_t>(n) * 1000 +
                                   static_cast<std::uint64_t>(std::lround(sigma * 10)));
    double sum = 0.0, sum_trim = 0.0;
    for (std::uint64_t i = 0; i < c.count; ++i) {
      const MinimizationResult m =
          minimize(determinize(tabakov_vardi({n, c.k, sigma, c.p_f, std::nullopt}, rng)));
      sum += m.complete_size;
      sum_trim += m.trim_size;
    }
    std::ostringstream key;
    key << "tv_sigma_" << sigma;
    cell[key.str() + "_minimal_mean"] = sum / count;
    cell[key.str() + "_minimal_trim_mean"] = sum_trim / count;
  }
  cell["seconds"] = seconds_since(t0);
  return cell;
}

nlohmann::json tv_check(const ExperimentConfig& c, int n, int threads) {
  const auto t0 = Clock::now();
  const CensusReport r = census(c.spec, n, c.k);
  std::unordered_map<std::string, std::uint32_t> class_of;
  enumerate_class(c.spec, n, c.k, [&](const Nfa& a) {
    class_of.emplace(a.key(), static_cast<std::uint32_t>(r.index_of(canonical_form(a))));
  });
  std::vector<std::uint32_t> index(c.count);
  AutCache cache;
  for_each_sample(
      c.sampler(n), c.seed, c.count,
      [&](std::size_t i, const SampleResult& s) { index[i] = class_of.at(s.automaton.key()); },
      &cache, threads);
  ClassTally tally(r);
  for (std::uint32_t i : index) tally.add_index(i);
  const Distribution d = tally.distribution();
  nlohmann::json cell = cell_header(c, n, seconds_since(t0));
  cell["samples"] = c.count;
  cell["total"] = r.total;
  cell["gamma"] = r.gamma();
  cell["tv_class_uniform"] = tv_distance(d, class_uniform_law(r));
  cell["tv_labeled_uniform"] = tv_distance(d, labeled_uniform_law(r));
  cell["law_margin"] = tv_distance(labeled_uniform_law(r), class_uniform_law(r));
  return cell;
}

nlohmann::json timing(const ExperimentConfig& c, int n, int threads) {
  AutCache cache;
  const SamplerConfig cfg = c.sampler(n);
  const auto t0 = Clock::now();
  std::vector<double> accept(c.count);
  for_each_sample(
      cfg, c.seed, c.count,
      [&](std::size_t i, const SampleResult& s) { accept[i] = s.accept_rate(); }, &cache,
      threads);
  const double secs = seconds_since(t0);
  nlohmann::json cell = cell_header(c, n, secs);
  cell["samples"] = c.count;
  cell["steps"] = cfg.steps;
  cell["seconds_per_sample"] = secs / static_cast<double>(c.count);
  cell["seconds_per_step"] = secs / static_cast<double>(c.count * cfg.steps);
  cell["cache_hits"] = cache.hits();
  cell["cache_misses"] = cache.misses();
  return cell;
}

}  // namespace

std::string class_token(const ClassSpec& c) {
  switch (c.family) {
    case Family::kAll: return "all";
    case Family::kTrim: return "trim";
    case Family::kDegTotal: return "deg";
    case Family::kDegPerLetter: return "deg-letter";
  }
  return "all";
}

void ExperimentConfig::validate() const {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
    throw std::invalid_argument("unknown experiment \"" + experiment + "\"");
  }
  if (sizes.empty()) throw std::invalid_argument("no sizes given");
  if (count == 0) throw std::invalid_argument("count must be positive");
  for (int n : sizes) {
    sampler(n).validate();
    if (experiment == "tv-check" && enumeration_bits(spec, n, k) > kEnumerationGuard) {
      throw std::invalid_argument("tv-check: class too large to enumerate at n = " +
                                  std::to_string(n));
    }
    if (experiment == "min-dfa") {
      for (double sigma : sigmas) TvParams{n, k, sigma, p_f, std::nullopt}.validate();
    }
  }
}

SamplerConfig ExperimentConfig::sampler(int n) const {
  SamplerConfig cfg;
  cfg.spec = spec;
  cfg.n = n;
  cfg.k = k;
  cfg.params = params;
  cfg.steps = steps ? *steps : default_steps(n);
  cfg.up_to_iso = up_to_iso;
  cfg.mode = mode;
  cfg.variant = variant;
  cfg.chains = chains;
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json doc{{"experiment", experiment},
                     {"class", class_token(spec)},
                     {"m", spec.m},
                     {"bullet", spec.bullet},
                     {"sizes", sizes},
                     {"alphabet", k},
                     {"rho1", params.rho1},
                     {"rho2", params.rho2},
                     {"rho3", params.rho3},
                     {"lazy", params.lazy},
                     {"steps", steps ? nlohmann::json(*steps) : nlohmann::json(nullptr)},
                     {"count", count},
                     {"seed", seed},
                     {"mode", mode == SamplingMode::kWalk ? "walk" : "restart"},
                     {"chains", chains},
                     {"variant", variant == MetropolisVariant::kRetry ? "retry" : "standard"},
                     {"up_to_iso", up_to_iso}};
  if (experiment == "min-dfa") {
    doc["sigmas"] = sigmas;
    doc["p_f"] = p_f;
  }
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  ExperimentConfig c;
  c.experiment = doc.at("experiment").get<std::string>();
  c.spec = class_from_token(doc.at("class").get<std::string>(), doc.at("m").get<int>(),
                            doc.at("bullet").get<bool>());
  c.sizes = doc.at("sizes").get<std::vector<int>>();
  c.k = doc.at("alphabet").get<int>();
  c.params = {doc.at("rho1").get<double>(), doc.at("rho2").get<double>(),
              doc.at("rho3").get<double>(), doc.at("lazy").get<bool>()};
  if (!doc.at("steps").is_null()) c.steps = doc.at("steps").get<std::uint64_t>();
  c.count = doc.at("count").get<std::uint64_t>();
  c.seed = doc.at("seed").get<std::uint64_t>();
  c.mode = doc.at("mode").get<std::string>() == "restart" ? SamplingMode::kRestart
                                                          : SamplingMode::kWalk;
  c.chains = doc.at("chains").get<int>();
  c.variant = doc.at("variant").get<std::string>() == "retry" ? MetropolisVariant::kRetry
                                                              : MetropolisVariant::kStandard;
  c.up_to_iso = doc.at("up_to_iso").get<bool>();
  if (doc.contains("sigmas")) c.sigmas = doc.at("sigmas").get<std::vector<double>>();
  if (doc.contains("p_f")) c.p_f = doc.at("p_f").get<double>();
  return c;
}

nlohmann::json RunReport::to_json() const {
  return {{"format", kReportFormat}, {"config", config.to_json()}, {"cells", cells}};
}

std::string RunReport::to_csv() const {
  std::vector<std::string> columns;
  for (const auto& cell : cells) {
    for (const auto& [key, value] : cell.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& cell : cells) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ',';
      if (!cell.contains(columns[i])) continue;
      const auto& v = cell.at(columns[i]);
      os << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    os << '\n';
  }
  return os.str();
}

RunReport run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  RunReport report{config, {}};
  for (int n : config.sizes) {
    if (config.experiment == "trim-rate") report.cells.push_back(trim_rate(config, n, threads));
    if (config.experiment == "aut-sizes") report.cells.push_back(aut_sizes(config, n, threads));
    if (config.experiment == "min-dfa") report.cells.push_back(min_dfa(config, n, threads));
    if (config.experiment == "tv-check") report.cells.push_back(tv_check(config, n, threads));
    if (config.experiment == "timing") report.cells.push_back(timing(config, n, threads));
  }
  if (config.experiment == "timing" && report.cells.size() >= 2) {
    // Least-squares slope of log(seconds per step) against log(n).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(report.cells.size());
    for (const auto& cell : report.cells) {
      const double x = std::log(cell["n"].get<double>());
      const double y = std::log(std::max(cell["seconds_per_step"].get<double>(), 1e-12));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    for (auto& cell : report.cells) cell["per_step_growth_exponent"] = slope;
  }
  return report;
}

}  // namespace nfagen::cli
