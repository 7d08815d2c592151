#include "test_util.hpp"

#include <sstream>
#include <vector>

#include "cli/app.hpp"
#include "cli/suite.hpp"
#include "tetralab/bidisc.hpp"
#include "tetralab/charfn.hpp"
#include "tetralab/fundamental.hpp"
#include "tetralab/generators.hpp"
#include "tetralab/io.hpp"

using namespace tetra;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  args.insert(args.begin(), "tetralab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, env);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(TETRALAB_TEST_TMPDIR) + "/" + name; }

Json without_wall_time(Json j) {
  j.erase("wall_time_s");
  return j;
}

}  // namespace

TEST(Cli, VerifyBidiscPasses) {
  const CliRun r = run({"verify-bidisc", "--degree", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["command"], "verify-bidisc");
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_EQ(j["config"]["degree"], 4);
}

TEST(Cli, TextFormatIsATable) {
  const CliRun r = run({"verify-bidisc", "--degree", "2", "--format", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("== bidisc example =="), std::string::npos);
  EXPECT_NE(r.out.find("overall: pass"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"verify-bidisc", "--degree", "abc"}).code, 2);
  EXPECT_EQ(run({"verify-bidisc", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify-bidisc", "--degree", "0"}).code, 2);
  EXPECT_EQ(run({"random-suite", "--count", "2"}).code, 2);  // seed is mandatory
  EXPECT_EQ(run({"random-suite", "--seed", "1", "--dim", "1"}).code, 2);
  EXPECT_EQ(run({"verify-bidisc", "--tol", "-1"}).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, MissingFilesExitTwo) {
  const CliRun r = run({"model-check", "/nonexistent/triple.json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Io"), std::string::npos);
  EXPECT_EQ(run({"blh", "/nonexistent/a.json", "/nonexistent/b.json"}).code, 2);
}

TEST(Cli, EnvironmentTolerance) {
  const CliRun bad = run({"verify-bidisc", "--degree", "2"}, std::string("abc"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("TETRALAB_TOL"), std::string::npos);
  const CliRun ok = run({"verify-bidisc", "--degree", "2"}, std::string("1e-9"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(Json::parse(ok.out)["config"]["tolerance"]["eq_tol"], 1e-9);
  const CliRun flag = run({"verify-bidisc", "--degree", "2", "--tol", "1e-7"}, std::string("1e-9"));
  EXPECT_EQ(Json::parse(flag.out)["config"]["tolerance"]["eq_tol"], 1e-7);
}

TEST(Cli, OutWritesTheFile) {
  const std::string path = tmp("bidisc_out.json");
  const CliRun r = run({"verify-bidisc", "--degree", "2", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_json_file(path)["overall"], "pass");
  EXPECT_EQ(run({"verify-bidisc", "--out", "/nonexistent/dir/x.json"}).code, 2);
}

TEST(Cli, RandomSuiteIsDeterministic) {
  const CliRun a = run({"random-suite", "--seed", "42", "--count", "6"});
  const CliRun b = run({"random-suite", "--seed", "42", "--count", "6"});
  EXPECT_EQ(a.code, 0) << a.out;
  const Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  EXPECT_TRUE(ja.contains("wall_time_s"));
  EXPECT_EQ(without_wall_time(ja).dump(), without_wall_time(jb).dump());
  EXPECT_EQ(ja["aggregate"]["instances"], 6);
  EXPECT_EQ(ja["config"]["seed"], 42);
  const CliRun c = run({"random-suite", "--seed", "43", "--count", "6"});
  EXPECT_NE(without_wall_time(Json::parse(c.out)).dump(), without_wall_time(ja).dump());
}

TEST(Cli, RandomSuiteFixedDegreeReportsTheTail) {
  // degree 2 is far too small for the scalar family: the tail check fails honestly
  const CliRun r = run({"random-suite", "--seed", "1", "--count", "3", "--degree", "2"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, AggregateIsTheFoldOfInstances) {
  cli::SuiteConfig cfg;
  cfg.seed = 5;
  cfg.count = 4;
  const cli::SuiteResult res = cli::run_suite(cfg);
  std::size_t checks = 0, passed = 0;
  for (const auto& inst : res.instances) {
    checks += inst.report.entries().size();
    passed += inst.report.overall() ? 1 : 0;
  }
  EXPECT_EQ(res.checks, checks);
  EXPECT_EQ(res.passed, passed);
  for (std::size_t k = 0; k < res.instances.size(); ++k) EXPECT_EQ(res.instances[k].index, k);
}

TEST(Cli, ModelCheckOnAFile) {
  const GeneratedInstance inst = generate_instance(8, 1, 3, 3);
  TripleFile f{inst.triple.A(), inst.triple.B(), inst.triple.P(), Json::object()};
  f.meta["family"] = to_string(inst.family);
  const std::string path = tmp("triple.json");
  write_text_file(path, triple_to_json(f).dump(2));
  const CliRun r = run({"model-check", path});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["meta"]["family"], "compressions");
  EXPECT_LE(j["tail"].get<double>(), 1e-10);
  EXPECT_EQ(run({"model-check", path, "--format", "text"}).code, 0);
}

TEST(Cli, ModelCheckRejectsNonCommutingTriple) {
  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  b(1, 0) = 1.0;
  const std::string path = tmp("bad_triple.json");
  write_text_file(path, triple_to_json({a, b, CMatrix::Zero(2, 2), Json::object()}).dump());
  const CliRun r = run({"model-check", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NonCommuting"), std::string::npos);
  write_text_file(path, "{\"A\": 1}");
  EXPECT_EQ(run({"model-check", path}).code, 2);
}

TEST(Cli, BlhPrintsTheExtractedPair) {
  const Index N = 3;
  const TetrablockTriple t = build(N);
  const FundamentalPair f = solve_fundamental(t);
  const FundamentalPair g = solve_fundamental(t.adjoint());
  const std::string th = tmp("theta.json"), sy = tmp("symbols.json");
  write_text_file(th, symbol_to_json(theta_taylor(t.contraction().adjoint(), N + 1)).dump());
  write_text_file(sy, symbol_pair_to_json(f.F1, f.F2).dump());
  const CliRun r = run({"blh", th, sy});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LE(op_norm(matrix_from_json(j["G1"]) - g.F1), 1e-9);
  EXPECT_LE(op_norm(matrix_from_json(j["G2"]) - g.F2), 1e-9);
  const CliRun text = run({"blh", th, sy, "--format", "text"});
  EXPECT_NE(text.out.find("G1 ("), std::string::npos);
  EXPECT_EQ(run({"blh", sy, th}).code, 2);  // swapped files do not parse
}
