#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfagen/chain.hpp"
#include "nfagen/metropolis.hpp"
#include "nfagen/nfa.hpp"
#include "nfagen/sampler.hpp"

namespace nfagen::cli {

inline constexpr int kReportFormat = 1;

// Everything needed to re-run an experiment; echoed into its report.
struct ExperimentConfig {
  std::string experiment;  // trim-rate, aut-sizes, min-dfa, tv-check or timing
  ClassSpec spec = ClassSpec::trim();
  std::vector<int> sizes;
  int k = 2;
  ChainParams params;
  std::optional<std::uint64_t> steps;  // n^3 when unset
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
  SamplingMode mode = SamplingMode::kWalk;
  int chains = 4;
  MetropolisVariant variant = MetropolisVariant::kStandard;
  bool up_to_iso = true;
  std::vector<double> sigmas{2.0, 3.0};  // min-dfa only
  double p_f = 0.2;                      // min-dfa only

  // Throws std::invalid_argument on an unknown experiment, empty or invalid
  // sizes, census guard violations for tv-check, or invalid chain parameters.
  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& doc);

  SamplerConfig sampler(int n) const;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<nlohmann::json> cells;

  nlohmann::json to_json() const;
  // One row per cell; columns are the union of cell keys in first-seen order.
  std::string to_csv() const;
};

RunReport run_experiment(const ExperimentConfig& config, int threads);

std::string class_token(const ClassSpec& c);

}  // namespace nfagen::cli
