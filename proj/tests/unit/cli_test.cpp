#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "experiments.hpp"
#include "nfagen/json_io.hpp"
#include "nfagen/nfa.hpp"
#include "support.hpp"

namespace nfagen {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> docs;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) docs.push_back(nlohmann::json::parse(line));
  return docs;
}

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = std::string(NFAGEN_TEST_TMP) + "/" + name;
  std::ofstream(path) << contents;
  return path;
}

TEST(Cli, SampleIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"sample", "--n", "1", "--count", "1", "--seed", "7"};
  const Outcome first = invoke(args);
  const Outcome second = invoke(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  const auto docs = lines(first.out);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0]["meta"]["seed"], 7);
  EXPECT_EQ(docs[1]["index"], 1);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> base{"sample-iso", "--n", "5", "--count", "12", "--seed", "3"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  EXPECT_EQ(invoke(one).out, invoke(four).out);
}

TEST(Cli, BulletDegreeSamplesStayInClass) {
  const Outcome r = invoke({"sample-iso", "--class", "deg", "--m", "2", "--bullet", "--n", "6",
                            "--count", "50", "--seed", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto docs = lines(r.out);
  ASSERT_EQ(docs.size(), 51u);
  for (std::size_t i = 1; i < docs.size(); ++i) {
    const Nfa a = parse_automaton(docs[i]["automaton"].dump()).nfa;
    EXPECT_TRUE(in_class(a, ClassSpec::deg_total(2, true)));
    EXPECT_TRUE(a.is_initial(0));
    for (State q = 1; q < a.num_states(); ++q) EXPECT_FALSE(a.is_initial(q));
  }
}

TEST(Cli, ThousandTrimSamplesAreTrim) {
  const Outcome r = invoke({"sample", "--class", "trim", "--n", "10", "--count", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto docs = lines(r.out);
  ASSERT_EQ(docs.size(), 1001u);
  for (std::size_t i = 1; i < docs.size(); ++i) {
    EXPECT_TRUE(is_trim(parse_automaton(docs[i]["automaton"].dump()).nfa));
  }
}

TEST(Cli, IsoOnFigurePairPrintsWitness) {
  const std::string left = write_temp("left.json", serialize_automaton(testing::figure_two_left()));
  const std::string right =
      write_temp("right.json", serialize_automaton(testing::figure_two_right()));
  const Outcome r = invoke({"iso", left, right});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["isomorphic"].get<bool>());
  EXPECT_EQ(doc["witness"], nlohmann::json({2, 3, 4, 1}));
}

TEST(Cli, IsoExitsOneWhenNotIsomorphic) {
  const std::string left = write_temp("left2.json", serialize_automaton(testing::figure_two_left()));
  Nfa other = testing::figure_two_left();
  other.set_final(0);
  const std::string right = write_temp("other.json", serialize_automaton(other));
  const Outcome r = invoke({"iso", left, right});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["isomorphic"].get<bool>());
}

TEST(Cli, AutOfAllInitialFinalIsFactorial) {
  const std::string path =
      write_temp("aif3.json", serialize_automaton(chain_start(ClassSpec::trim(), 3, Alphabet(2))));
  const Outcome r = invoke({"aut", path, "--via-gadgets"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["aut"], "6");
  EXPECT_EQ(doc["aut_via_gadgets"], "6");
  EXPECT_EQ(doc["generators"].size(), 3u);
}

TEST(Cli, AutReadsSampleRecords) {
  const Outcome s = invoke({"sample", "--n", "4", "--seed", "5"});
  const auto docs = lines(s.out);
  const std::string path = write_temp("record.json", docs[1].dump());
  const Outcome r = invoke({"aut", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["aut"], docs[1]["aut"]);
}

TEST(Cli, CensusOfAllOneState) {
  const Outcome r = invoke({"census", "--class", "all", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["gamma"], 16);
  EXPECT_EQ(doc["total"], 16);
}

TEST(Cli, CensusGuardRejectsLargeClasses) {
  const Outcome r = invoke({"census", "--class", "all", "--n", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageErrorsExitNonzeroWithDiagnostic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"sample", "--n", "zero"},
           {"sample", "--bullet", "--rho1", "0.2"},
           {"sample", "--rho", "0.5"},
           {"sample", "--class", "deg", "--m", "1"},
           {"sample", "--rho1", "0.6", "--rho2", "0.6"},
           {"experiment", "unknown"},
           {"aut", "/nonexistent/file.json"}}) {
    const Outcome r = invoke(args);
    EXPECT_NE(r.code, 0);
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, MalformedAutomatonIsRejected) {
  const std::string path = write_temp("bad.json", R"({"n":2,"alphabet":2,"initial":[3]})");
  const Outcome r = invoke({"aut", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ExperimentReportReplaysFromEmbeddedConfig) {
  const Outcome first =
      invoke({"experiment", "aut-sizes", "--sizes", "4,5", "--count", "20", "--seed", "9"});
  ASSERT_EQ(first.code, 0) << first.err;
  const auto report = nlohmann::json::parse(first.out);
  EXPECT_EQ(report["format"], cli::kReportFormat);
  ASSERT_EQ(report["cells"].size(), 2u);
  const std::string path = write_temp("report.json", first.out);
  const Outcome again = invoke({"experiment", "aut-sizes", "--config", path});
  ASSERT_EQ(again.code, 0) << again.err;
  const auto replay = nlohmann::json::parse(again.out);
  EXPECT_EQ(replay["config"], report["config"]);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(replay["cells"][i]["aut_mean"], report["cells"][i]["aut_mean"]);
    EXPECT_EQ(replay["cells"][i]["aut_max"], report["cells"][i]["aut_max"]);
  }
}

TEST(Cli, ExperimentCsvHasHeaderAndRows) {
  const Outcome r = invoke(
      {"experiment", "trim-rate", "--sizes", "3,4", "--count", "50", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NE(rows[0].find("trim_proportion"), std::string::npos);
}

TEST(Cli, TvCheckRefusesUnenumerableClass) {
  const Outcome r = invoke({"experiment", "tv-check", "--sizes", "6", "--count", "10"});
  EXPECT_EQ(r.code, 2);
}

}  // namespace
}  // namespace nfagen
