#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "repising/model.hpp"

namespace fs = std::filesystem;
using repising::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "repising");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("repising_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }
  std::string write(const std::string &name, const std::string &content) const {
    std::ofstream(path(name)) << content;
    return path(name);
  }
  static std::string slurp(const std::string &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

} // namespace

TEST(CliHash, GitBlobOracle) {
  // `printf 'hello\n' | git hash-object --stdin`
  EXPECT_EQ(repising::cli::git_blob_sha1("hello\n"),
            "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(repising::cli::git_blob_sha1(""),
            "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_F(Cli, SolveLadder) {
  const auto inst =
      write("ladder.json", repising::model_to_json(repising::make_ladder_instance(4)));
  for (const char *solver : {"auto", "brute", "frontier", "bnb"}) {
    const Result r = cli({"solve", inst, "--solver", solver});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("value       -7\n"), std::string::npos) << r.out;
  }
  const Result w = cli({"solve", inst, "--wcnf", path("l.wcnf")});
  EXPECT_EQ(w.code, 0);
  EXPECT_NE(slurp(path("l.wcnf")).find("p wcnf 8 "), std::string::npos);
}

TEST_F(Cli, SolveErrors) {
  const Result bad = cli({"solve", write("bad.json", "{\"vertices\": 2,\n \"edges\": [[0 1]]}")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
  EXPECT_EQ(cli({"solve", path("missing.json")}).code, 2);
  EXPECT_EQ(cli({"solve", path("x.json"), "--solver", "magic"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);

  const auto big = write("big.json",
                         repising::model_to_json(repising::make_ladder_instance(15)));
  const Result refused = cli({"solve", big, "--solver", "brute"});
  EXPECT_EQ(refused.code, 3);
}

TEST_F(Cli, SweepSingleCell) {
  const auto cfg = write("c.json", R"({"n_list": [4], "eps_list": [0], "trials": 1})");
  const Result r = cli({"sweep", "--config", cfg, "--out", path("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("o/sweep_unencoded.csv")),
            "N,eps_max,K,failure_rate,std_err,code_space_rate,trials\n"
            "4,0,1,0.000000,0.000000,1.000000,1\n");
  const auto manifest = nlohmann::json::parse(slurp(path("o/manifest.json")));
  EXPECT_EQ(manifest["config"]["trials"], 1);
  EXPECT_EQ(manifest["config"]["master_seed"], 1);
  EXPECT_EQ(manifest["outputs"][0]["sha1"],
            repising::cli::git_blob_sha1(slurp(path("o/sweep_unencoded.csv"))));
  EXPECT_EQ(manifest["cells"].size(), 1u);
}

TEST_F(Cli, SweepDeterministicAcrossThreadsAndFromManifest) {
  const auto cfg = write("c.json", R"({"n_list": [3, 5, 7], "eps_list": [0.2, 0.5, 0.8],
                                       "trials": 40, "master_seed": 9})");
  ASSERT_EQ(cli({"sweep", "--config", cfg, "--out", path("t1"), "--threads", "1"}).code, 0);
  ASSERT_EQ(cli({"sweep", "--config", cfg, "--out", path("t8"), "--threads", "8"}).code, 0);
  const std::string csv = slurp(path("t1/sweep_unencoded.csv"));
  EXPECT_EQ(csv, slurp(path("t8/sweep_unencoded.csv")));
  ASSERT_EQ(cli({"sweep", "--config", path("t8/manifest.json"), "--out", path("m")}).code, 0);
  EXPECT_EQ(csv, slurp(path("m/sweep_unencoded.csv")));
  ASSERT_EQ(cli({"sweep", "--config", cfg, "--out", path("s"), "--seed", "10"}).code, 0);
  EXPECT_NE(csv, slurp(path("s/sweep_unencoded.csv")));
}

TEST_F(Cli, EncodedSweepWritesRescaledTable) {
  const auto cfg = write("c.json", R"({"n": 3, "eps_list": [0.3], "trials": 5,
                                       "encodings": [{"code_graph": "grid", "dims": [2, 2]}]})");
  ASSERT_EQ(cli({"sweep", "--config", cfg, "--out", path("e"), "--mode", "encoded"}).code, 0);
  EXPECT_TRUE(fs::exists(path("e/sweep_encoded.csv")));
  EXPECT_NE(slurp(path("e/sweep_rescaled.csv")).find(",eps_applied\n"), std::string::npos);
}

TEST_F(Cli, SweepConfigErrorsAreEnumerated) {
  const auto cfg = write("c.json", R"({"n_list": [0], "bogus": 1, "trials": -3})");
  const Result r = cli({"sweep", "--config", cfg, "--out", path("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("n_list[0]"), std::string::npos);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
  EXPECT_NE(r.err.find("trials"), std::string::npos);
  EXPECT_EQ(cli({"sweep", "--config", cfg, "--out", path("o"), "--mode", "x"}).code, 2);
}

TEST_F(Cli, DemoFig1) {
  const Result r = cli({"demo-fig1", "--out", path("d")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(slurp(path("d/fig1.json")));
  EXPECT_EQ(report["violated_links"].size(), 1u);
  EXPECT_FALSE(report["encoded"]["failed"].get<bool>());
  EXPECT_EQ(report["ground_energy"], -15.0);

  const Result none = cli({"demo-fig1", "--budget", "3", "--eps", "0.01"});
  EXPECT_EQ(none.code, 4);
  EXPECT_NE(none.err.find("0..2"), std::string::npos);
}
