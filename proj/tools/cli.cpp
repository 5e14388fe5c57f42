#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "experiments.hpp"
#include "nfagen/census.hpp"
#include "nfagen/gadget.hpp"
#include "nfagen/isomorphism.hpp"
#include "nfagen/json_io.hpp"
#include "nfagen/labeling.hpp"
#include "nfagen/parallel.hpp"
#include "nfagen/sampler.hpp"

namespace nfagen::cli {

namespace {

// Raised for bad flag combinations and unreadable inputs; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClassFlags {
  std::optional<std::string> family;
  int m = 2;
  bool bullet = false;
  int k = 2;

  void add(CLI::App* app) {
    app->add_option("--class", family, "Automaton class")
        ->check(CLI::IsMember({"all", "trim", "deg", "deg-letter"}));
    app->add_option("--m", m, "Degree bound for deg and deg-letter")->check(CLI::PositiveNumber);
    app->add_flag("--bullet", bullet, "Single initial state (state 1)");
    app->add_option("--alphabet", k, "Alphabet size")->check(CLI::Range(2, 26));
  }

  ClassSpec spec(const std::string& fallback) const {
    const std::string f = family.value_or(fallback);
    ClassSpec c;
    if (f == "all") c = {Family::kAll, 0, bullet};
    if (f == "trim") c = ClassSpec::trim(bullet);
    if (f == "deg") c = ClassSpec::deg_total(m, bullet);
    if (f == "deg-letter") c = ClassSpec::deg_per_letter(m, bullet);
    c.validate();
    return c;
  }
};

struct ChainFlags {
  std::optional<double> rho1, rho2, rho3, rho;
  std::string lazy = "auto";
  std::optional<std::uint64_t> steps;
  std::uint64_t seed = 1;
  std::string mode = "walk";
  int chains = 4;
  bool retry = false;
  int threads = default_threads();

  void add(CLI::App* app) {
    app->add_option("--rho1", rho1, "Probability of an initial-state toggle");
    app->add_option("--rho2", rho2, "Probability of a final-state toggle");
    app->add_option("--rho3", rho3, "Probability of a transition toggle");
    app->add_option("--rho", rho, "Bullet kernel: rho2 = rho, rho3 = 1 - rho");
    app->add_option("--lazy", lazy, "Lazy chain (auto: lazy on class all only)")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    app->add_option("--steps", steps, "Steps per sample (default n^3)");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--mode", mode, "walk: one walk per chain; restart: fresh run per sample")
        ->check(CLI::IsMember({"walk", "restart"}));
    app->add_option("--chains", chains, "Independent walks in walk mode")
        ->check(CLI::PositiveNumber);
    app->add_flag("--mh-retry", retry, "Redraw rejected Metropolis proposals within the step");
    app->add_option("--threads", threads, "Worker threads (default NFAGEN_THREADS)")
        ->check(CLI::PositiveNumber);
  }

  ChainParams params(const ClassSpec& c) const {
    ChainParams p = default_params(c);
    if (rho) {
      if (!c.bullet) throw UsageError("--rho applies to bullet classes only");
      p = ChainParams::bullet(*rho, p.lazy);
    }
    if (c.bullet && rho1 && *rho1 != 0.0) throw UsageError("--bullet requires --rho1 0");
    if (rho1) p.rho1 = *rho1;
    if (rho2) p.rho2 = *rho2;
    if (rho3) p.rho3 = *rho3;
    if (lazy != "auto") p.lazy = lazy == "on";
    try {
      p.validate(c);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  SamplingMode sampling_mode() const {
    return mode == "restart" ? SamplingMode::kRestart : SamplingMode::kWalk;
  }
  MetropolisVariant variant() const {
    return retry ? MetropolisVariant::kRetry : MetropolisVariant::kStandard;
  }
};

// Writes to --out when given, to `out` otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Accepts a bare automaton document or a sample record holding one.
Nfa read_automaton(const std::string& path) {
  const std::string text = read_input(path);
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.is_object() && doc.contains("automaton")) {
      return parse_automaton(doc.at("automaton").dump()).nfa;
    }
  } catch (const nlohmann::json::exception&) {
    // Reported by parse_automaton below.
  }
  return parse_automaton(text).nfa;
}

nlohmann::json one_based(const std::vector<State>& image) {
  nlohmann::json list = nlohmann::json::array();
  for (State q : image) list.push_back(q + 1);
  return list;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      sizes.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad size list \"" + text + "\"");
    }
  }
  return sizes;
}

struct SampleCommand {
  ClassFlags cls;
  ChainFlags chain;
  int n = 5;
  std::uint64_t count = 1;
  std::string out, dot;
  bool up_to_iso = false;

  int run(std::ostream& stdout_stream) const {
    SamplerConfig cfg;
    cfg.spec = cls.spec("trim");
    cfg.n = n;
    cfg.k = cls.k;
    cfg.params = chain.params(cfg.spec);
    cfg.steps = chain.steps ? *chain.steps : default_steps(n);
    cfg.up_to_iso = up_to_iso;
    cfg.mode = chain.sampling_mode();
    cfg.variant = chain.variant();
    cfg.chains = chain.chains;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }

    Sink sink(out, stdout_stream);
    std::ostream& os = sink.get();
    nlohmann::json meta{{"format", kReportFormat},
                        {"command", up_to_iso ? "sample-iso" : "sample"},
                        {"class", class_token(cfg.spec)},
                        {"class_name", cfg.spec.name()},
                        {"m", cfg.spec.m},
                        {"bullet", cfg.spec.bullet},
                        {"n", n},
                        {"alphabet", cfg.k},
                        {"rho1", cfg.params.rho1},
                        {"rho2", cfg.params.rho2},
                        {"rho3", cfg.params.rho3},
                        {"lazy", cfg.params.lazy},
                        {"steps", cfg.steps},
                        {"count", count},
                        {"seed", chain.seed},
                        {"mode", chain.mode},
                        {"chains", cfg.chains},
                        {"variant", chain.retry ? "retry" : "standard"}};
    os << nlohmann::json{{"meta", meta}}.dump() << '\n';

    std::ofstream dot_file;
    if (!dot.empty()) {
      dot_file.open(dot);
      if (!dot_file) throw UsageError("cannot write " + dot);
    }
    // Samples may finish out of order on several workers; emit them in order.
    std::mutex mutex;
    std::map<std::size_t, std::pair<std::string, std::string>> pending;
    std::size_t next = 0;
    AutCache cache;
    for_each_sample(
        cfg, chain.seed, count,
        [&](std::size_t i, const SampleResult& s) {
          if (!in_class(s.automaton, cfg.spec)) {
            throw std::logic_error("sample left its class");
          }
          nlohmann::json line{{"index", i + 1},
                              {"automaton", nlohmann::json::parse(serialize_automaton(s.automaton))},
                              {"aut", s.aut.str()},
                              {"steps", s.steps}};
          if (up_to_iso) {
            line["proposals"] = s.proposals;
            line["accepted"] = s.accepted;
            line["rejected"] = s.rejected;
            line["accept_rate"] = s.accept_rate();
          }
          std::string graph =
              dot.empty() ? std::string() : to_dot(s.automaton, "sample" + std::to_string(i + 1));
          std::lock_guard lock(mutex);
          pending.emplace(i, std::make_pair(line.dump(), std::move(graph)));
          for (auto it = pending.find(next); it != pending.end(); it = pending.find(next)) {
            os << it->second.first << '\n';
            if (dot_file.is_open()) dot_file << it->second.second;
            pending.erase(it);
            ++next;
          }
        },
        &cache, chain.threads);
    return 0;
  }
};

struct ExperimentCommand {
  std::string name;
  ClassFlags cls;
  ChainFlags chain;
  std::optional<std::string> sizes;
  std::optional<std::uint64_t> count;
  std::optional<std::string> sigmas;
  double p_f = 0.2;
  std::optional<bool> up_to_iso;
  std::string format = "json";
  std::string out, config_path;

  ExperimentConfig config() const {
    if (!config_path.empty()) {
      const auto doc = nlohmann::json::parse(read_input(config_path));
      return ExperimentConfig::from_json(doc.contains("config") ? doc.at("config") : doc);
    }
    ExperimentConfig c;
    c.experiment = name;
    std::string family = "trim", default_sizes = "5,8,10";
    std::uint64_t default_count = 1000;
    bool iso = true, bullet = cls.bullet;
    int m = cls.m;
    if (name == "trim-rate") {
      family = "all";
      default_sizes = "5,10,15,20";
      iso = false;
    } else if (name == "min-dfa") {
      family = "deg-letter";
      default_sizes = "5,8,11";
      if (!cls.family) {
        bullet = true;
        m = 2;
      }
    } else if (name == "tv-check") {
      default_sizes = "2";
      default_count = 1000000;
    } else if (name == "timing") {
      default_sizes = "5,10,15,20";
      default_count = 100;
    }
    ClassFlags effective = cls;
    effective.bullet = bullet;
    effective.m = m;
    c.spec = effective.spec(family);
    c.k = cls.k;
    c.sizes = parse_sizes(sizes.value_or(default_sizes));
    c.params = chain.params(c.spec);
    c.steps = chain.steps;
    c.count = count.value_or(default_count);
    c.seed = chain.seed;
    c.mode = chain.sampling_mode();
    c.chains = chain.chains;
    c.variant = chain.variant();
    c.up_to_iso = up_to_iso.value_or(iso);
    if (sigmas) {
      c.sigmas.clear();
      std::stringstream ss(*sigmas);
      std::string item;
      while (std::getline(ss, item, ',')) c.sigmas.push_back(std::stod(item));
    }
    c.p_f = p_f;
    return c;
  }

  int run(std::ostream& stdout_stream) const {
    const ExperimentConfig c = config();
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const RunReport report = run_experiment(c, chain.threads);
    Sink sink(out, stdout_stream);
    if (format == "csv") {
      sink.get() << report.to_csv();
    } else {
      sink.get() << report.to_json().dump(2) << '\n';
    }
    return 0;
  }
};

int aut_command(const std::vector<std::string>& paths, bool via_gadgets, std::ostream& os) {
  for (const std::string& path : paths) {
    const Nfa a = read_automaton(path);
    const AutomorphismGroup g = automorphism_group(a);
    nlohmann::json gens = nlohmann::json::array();
    for (const Permutation& p : g.generators) gens.push_back(one_based(p.image()));
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : label_partition(a).cells) cells.push_back(one_based(cell));
    nlohmann::json doc{{"input", path},
                       {"n", a.num_states()},
                       {"aut", g.order.str()},
                       {"generators", gens},
                       {"label_cells", cells},
                       {"canonical", digest(canonical_form(a))}};
    if (via_gadgets) {
      if (!is_trim(a)) throw UsageError("--via-gadgets needs a trim automaton");
      const ViaIsoCount v = count_automorphisms_via_iso(a);
      doc["aut_via_gadgets"] = v.order.str();
      doc["orbit_sizes"] = v.orbit_sizes;
    }
    os << doc.dump() << '\n';
  }
  return 0;
}

int iso_command(const std::string& left, const std::string& right, std::ostream& os) {
  const Nfa a = read_automaton(left);
  const Nfa b = read_automaton(right);
  const auto w = are_isomorphic(a, b);
  nlohmann::json doc{{"isomorphic", w.has_value()}};
  if (w) doc["witness"] = one_based(w->phi.image());
  os << doc.dump() << '\n';
  return w ? 0 : 1;
}

int census_command(const ClassFlags& cls, int n, bool with_classes, std::ostream& os) {
  const ClassSpec c = cls.spec("trim");
  if (enumeration_bits(c, n, cls.k) > kEnumerationGuard) {
    throw UsageError("class too large to enumerate (more than 2^26 candidates)");
  }
  auto doc = nlohmann::json::parse(census(c, n, cls.k).to_json());
  if (!with_classes) doc.erase("classes");
  os << doc.dump() << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform random generation of nondeterministic automata"};
  app.require_subcommand(1);

  SampleCommand sample, sample_iso;
  sample_iso.up_to_iso = true;
  for (auto [cmd, name, help] :
       {std::tuple{&sample, "sample", "Uniform labeled automata (plain chain)"},
        std::tuple{&sample_iso, "sample-iso",
                   "Automata uniform up to isomorphism (Metropolis chain)"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    cmd->cls.add(sub);
    cmd->chain.add(sub);
    sub->add_option("--n", cmd->n, "Number of states")->check(CLI::PositiveNumber);
    sub->add_option("--count", cmd->count, "Number of samples");
    sub->add_option("--out", cmd->out, "Output file (JSON lines)");
    sub->add_option("--dot", cmd->dot, "Also write every sample as a DOT digraph to this file");
  }

  ExperimentCommand experiment;
  CLI::App* exp = app.add_subcommand("experiment", "Reproduce a table as a run report");
  exp->add_option("name", experiment.name, "trim-rate | aut-sizes | min-dfa | tv-check | timing")
      ->required()
      ->check(CLI::IsMember({"trim-rate", "aut-sizes", "min-dfa", "tv-check", "timing"}));
  experiment.cls.add(exp);
  experiment.chain.add(exp);
  exp->add_option("--sizes", experiment.sizes, "Comma-separated state counts");
  exp->add_option("--count", experiment.count, "Samples per cell");
  exp->add_option("--sigmas", experiment.sigmas, "min-dfa: Tabakov-Vardi densities");
  exp->add_option("--pf", experiment.p_f, "min-dfa: Tabakov-Vardi final-state probability");
  exp->add_option("--up-to-iso", experiment.up_to_iso, "Use the Metropolis chain (true/false)");
  exp->add_option("--format", experiment.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  exp->add_option("--out", experiment.out, "Report file");
  exp->add_option("--config", experiment.config_path,
                  "Re-run the configuration embedded in a JSON report");

  std::vector<std::string> aut_paths;
  bool via_gadgets = false;
  CLI::App* aut = app.add_subcommand("aut", "Automorphism group of automaton documents");
  aut->add_option("files", aut_paths, "Automaton documents (- for standard input)")->required();
  aut->add_flag("--via-gadgets", via_gadgets, "Also count through gadget isomorphism tests");

  std::string iso_left, iso_right;
  CLI::App* iso = app.add_subcommand("iso", "Isomorphism test; exit 0 iff isomorphic");
  iso->add_option("first", iso_left, "Automaton document (- for standard input)")->required();
  iso->add_option("second", iso_right, "Automaton document")->required();

  ClassFlags census_cls;
  int census_n = 2;
  bool census_classes = false;
  CLI::App* cen = app.add_subcommand("census", "Enumerate a class up to isomorphism");
  census_cls.add(cen);
  cen->add_option("--n", census_n, "Number of states")->check(CLI::PositiveNumber);
  cen->add_flag("--classes", census_classes, "List every isomorphism class");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto* cmd : {&sample, &sample_iso}) {
      if (app.got_subcommand(cmd == &sample ? "sample" : "sample-iso")) return cmd->run(out);
    }
    if (app.got_subcommand(exp)) return experiment.run(out);
    if (app.got_subcommand(aut)) return aut_command(aut_paths, via_gadgets, out);
    if (app.got_subcommand(iso)) return iso_command(iso_left, iso_right, out);
    if (app.got_subcommand(cen)) return census_command(census_cls, census_n, census_classes, out);
  } catch (const UsageError& e) {
    err << "nfagen: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "nfagen: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "nfagen: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace nfagen::cli
