#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "scenario.hpp"

using namespace bkalg;
using namespace bkalg::tools;
using io::Json;

namespace fs = std::filesystem;

namespace {

Json base(const Json& bundle, std::size_t atoms = 2) {
  Json space = Json::array();
  for (std::size_t i = 0; i < atoms; ++i) space.push_back({{"atom_id", "w" + std::to_string(i + 1)}, {"weight", 1.0}});
  return Json{{"space", space}, {"bundle", bundle}, {"commands", Json::array()}};
}

Report run_doc(const Json& doc, std::uint64_t seed = 0) {
  const Scenario s = parse_scenario(doc);
  Parameters p = s.parameters;
  p.seed = seed;
  return run(s, p);
}

std::string parse_message(const Json& doc) {
  try {
    parse_scenario(doc);
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("bkalg_cli_test_" + name);
  std::ofstream(p) << content;
  return p;
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string(BKALG_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const Json kMatrix2 = {{"kind", "matrix"}, {"n", 2}};
const Json kScalar = {{"kind", "scalar"}};

}  // namespace

TEST(Scenario, ScalarGelfandMazurIsIsomorphic) {
  Json doc = base(kScalar, 3);
  doc["commands"] = {"gelfand-mazur"};
  const Report r = run_doc(doc);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.commands[0].result["outcome"], "Isomorphic");
}

TEST(Scenario, MatrixReverseBoundIsCounterexampleAndPasses) {
  Json doc = base(kMatrix2);
  doc["commands"] = {"reverse-bound"};
  const Report r = run_doc(doc);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.commands[0].result["outcome"], "Counterexample");
  EXPECT_EQ(r.commands[0].result["witness_replays"], true);
}

TEST(Scenario, MalformedLiteralNamesAtomAndSection) {
  Json doc = base(kMatrix2);
  doc["sections"] = {{{"name", "x"},
                      {"values", {{"w1", {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}, {"w2", {{1, 0}, {0, 0}, {0, 0}}}}}}};
  const std::string msg = parse_message(doc);
  EXPECT_NE(msg.find("section 'x'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("atom 'w2'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("got 3"), std::string::npos) << msg;
}

TEST(Scenario, ParseErrorsCarryFieldPath) {
  Json doc = base(kMatrix2);
  doc["commands"] = {{{"command", "invert"}, {"section", "missing"}}};
  EXPECT_NE(parse_message(doc).find("commands[0].section"), std::string::npos);
  doc["commands"] = {"frobnicate"};
  EXPECT_NE(parse_message(doc).find("unknown command 'frobnicate'"), std::string::npos);
  doc["commands"] = Json::array();
  doc["bundle"] = {{"kind", "matrix"}, {"n", 9}};
  EXPECT_NE(parse_message(doc).find("bundle"), std::string::npos);
  Json bad_space = base(kScalar);
  bad_space["space"][1]["weight"] = -1.0;
  EXPECT_NE(parse_message(bad_space).find("space"), std::string::npos);
}

TEST(Scenario, SyntaxErrorsReportLine) {
  const fs::path p = write_temp("syntax.json", "{\n  \"space\": [\n    {\"atom_id\": \"w1\" \"weight\": 1}\n  ]\n}\n");
  try {
    load_scenario(p);
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Scenario, PreconditionFailureIsAStructuredEntry) {
  Json doc = base(kScalar);
  doc["sections"] = {{{"name", "x"}, {"values", {{"w1", {0.5, 0}}, {"w2", {-0.5, 0}}}}}};
  doc["commands"] = {{{"command", "invert"}, {"section", "x"}, {"method", "neumann"}}, "norms"};
  const Report r = run_doc(doc);
  ASSERT_EQ(r.commands.size(), 2u);
  EXPECT_FALSE(r.commands[0].passed);
  EXPECT_EQ(r.commands[0].result["error"]["type"], "precondition");
  EXPECT_EQ(r.commands[0].result["error"]["atom"], "w2");
  EXPECT_TRUE(r.commands[1].passed);  // later commands still run
}

TEST(Scenario, InvertEmitsCertificate) {
  Json doc = base(kScalar);
  doc["sections"] = {{{"name", "x"}, {"values", {{"w1", {0.5, 0}}, {"w2", {2, 0}}}}}};
  doc["commands"] = {{{"command", "invert"}, {"section", "x"}}};
  const Json res = run_doc(doc).commands[0].result;
  EXPECT_EQ(res["method"], "exact");
  for (const char* key : {"inverse", "residual", "truncation_order", "bound_slack"}) EXPECT_TRUE(res.contains(key)) << key;
  EXPECT_EQ(res["inverse"]["values"]["w1"], Json({2.0, 0.0}));
}

TEST(Scenario, WitnessReplaysToSameVerdict) {
  for (const char* cmd : {"gelfand-mazur", "reverse-bound"}) {
    Json doc = base(kMatrix2, 3);
    doc["commands"] = {cmd};
    const Json verdict = run_doc(doc).commands[0].result;
    ASSERT_EQ(verdict["outcome"], "Counterexample");
    Json replay = base(kMatrix2, 3);
    replay["commands"] = {{{"command", "replay"},
                           {"check", std::string(cmd) == "gelfand-mazur" ? "unit-support" : "zero-divisor"},
                           {"witness", verdict["witness"]}}};
    const Report r = run_doc(replay);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.commands[0].result["outcome"], verdict["outcome"]);
  }
}

TEST(Scenario, RejectedWitnessFails) {
  Json doc = base(kMatrix2);
  const Json unit = {{"name", "u"}, {"values", {{"w1", {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}, {"w2", {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}}}};
  doc["commands"] = {{{"command", "replay"}, {"check", "unit-support"}, {"witness", {unit}}}};
  const Report r = run_doc(doc);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.commands[0].result["outcome"], "Rejected");
}

TEST(Scenario, VerifyIsDeterministic) {
  Json doc = base(Json::array({kScalar, kMatrix2, {{"kind", "function"}, {"k", 2}}}), 3);
  doc["parameters"] = {{"samples", 40}};
  doc["commands"] = {"verify", "gelfand-mazur", "reverse-bound"};
  const Json a = to_json(run_doc(doc), false);
  const Json b = to_json(run_doc(doc), false);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_TRUE(a["passed"].get<bool>());
  EXPECT_EQ(a["schema"], 1);
  EXPECT_NE(to_json(run_doc(doc, 1), false).dump(), a.dump());
}

TEST(Scenario, FlagsOverrideFileParameters) {
  Parameters file;
  file.samples = 10;
  file.tolerance = 1e-6;
  ParameterOverrides flags;
  flags.samples = 20;
  const Parameters p = resolve(file, flags);
  EXPECT_EQ(p.samples, 20u);
  EXPECT_EQ(p.tolerance, 1e-6);
  EXPECT_EQ(p.cap, 4096u);
  EXPECT_EQ(p.seed, 0u);
}

TEST(Executable, ExitCodes) {
  const fs::path dir = BKALG_SCENARIO_DIR;
  EXPECT_EQ(exit_code("run " + (dir / "scalar.json").string() + " --samples 50"), 0);
  EXPECT_EQ(exit_code("run " + (dir / "matrix2.json").string() + " --samples 50 --report text"), 0);
  EXPECT_EQ(exit_code("run /nonexistent.json"), 2);
  EXPECT_EQ(exit_code("run " + (dir / "scalar.json").string() + " --report yaml"), 2);
  EXPECT_EQ(exit_code("frobnicate"), 2);

  Json failing = base(kMatrix2);
  failing["commands"] = {{{"command", "gelfand-mazur"}, {"expect", "Isomorphic"}}};
  EXPECT_EQ(exit_code("run " + write_temp("fail.json", failing.dump()).string()), 1);

  const fs::path out = fs::temp_directory_path() / "bkalg_cli_test_report.json";
  EXPECT_EQ(exit_code("run " + (dir / "scalar.json").string() + " --samples 20 --seed 3 --out " + out.string()), 0);
  std::ifstream in(out);
  const Json report = Json::parse(in);
  EXPECT_EQ(report["seed"], 3);
  EXPECT_EQ(report["parameters"]["samples"], 20);
}
